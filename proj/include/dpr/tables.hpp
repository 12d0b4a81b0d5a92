#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpr/adl.hpp"
#include "dpr/johansen.hpp"
#include "dpr/oos_eval.hpp"
#include "dpr/predictability.hpp"
#include "dpr/ratios.hpp"
#include "dpr/series_store.hpp"
#include "dpr/stats_core.hpp"

namespace dpr::tables {

/// Batch-run configuration. Echoed verbatim into every output header.
struct RunConfig {
    std::filesystem::path data_path;
    CsvSchema schema;
    double rho = 0.96;
    stats::HacKernel kernel = stats::HacKernel::hansen_hodrick;
    std::optional<int> hac_lag;  ///< fixed truncation lag; default rule when absent
    /// Sampling for the tables whose captions say "annual"; the long-horizon
    /// regression tables always use the overlapping monthly grid.
    predict::Sampling annual_sampling = predict::Sampling::annual_december;
    YearMonth panel_b_start{1965, 1};
    int oos_init_years = 15;
    int max_var_lag = 12;
    std::uint64_t seed = 20120101;

    [[nodiscard]] std::vector<std::pair<std::string, std::string>> echo() const;
};

enum class Panel { A, B };

/// Everything the presets need, estimated once per run.
struct Analysis {
    MonthlySeries series;
    AnnualPanel panel;
    int var_lag = 0;  ///< Hannan-Quinn VAR order; the VECM uses one less
    johansen::VecmFit vecm;
    adl::AdlFit adl_model;
    adl::LongRunSolution adl_lr;
    RatioPanel ratios;  ///< population-beta ratios
    BetaPath beta_path;  ///< recursive Johansen path, full panel
};

Analysis analyze(const RunConfig& config);
Analysis analyze(MonthlySeries series, const RunConfig& config);

/// One rendered table or figure data set: formatted cells plus the numeric
/// payload for machine use.
struct TableDoc {
    std::string id;
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> meta;
    nlohmann::json values;
};

TableDoc table_1a(const Analysis& a, const RunConfig& config);
TableDoc table_1b(const Analysis& a, const RunConfig& config);
TableDoc table_2a(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_2b(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_2c(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_3(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_4(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_4b(const Analysis& a, const RunConfig& config, Panel panel);
TableDoc table_5(const Analysis& a, const RunConfig& config, Panel panel);

TableDoc figure_1(const Analysis& a, const RunConfig& config);
TableDoc figure_2(const Analysis& a, const RunConfig& config);

std::string render_csv(const TableDoc& doc);
std::string render_markdown(const TableDoc& doc);

/// Emission entry points used by the command-line driver. Each returns the
/// list of files written. Table/figure ids are lower case ("1a", "2", ...).
std::vector<std::filesystem::path> write_tables(const Analysis& a, const RunConfig& config,
                                                const std::vector<std::string>& ids,
                                                const std::vector<Panel>& panels,
                                                const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> write_figures(const Analysis& a, const RunConfig& config,
                                                 const std::vector<std::string>& ids,
                                                 const std::filesystem::path& out_dir);

/// All implemented table ids in emission order.
const std::vector<std::string>& all_table_ids();
const std::vector<std::string>& all_figure_ids();

}  // namespace dpr::tables
