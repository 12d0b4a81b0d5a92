#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dpr/errors.hpp"
#include "dpr/selftest.hpp"
#include "dpr/tables.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitNumericError = 2;
constexpr int kExitSelftestFailure = 3;

struct CliOptions {
    std::string data;
    std::string schema;
    std::string tables = "all";
    std::string figures = "all";
    std::string panel = "both";
    double rho = 0.96;
    std::string hac = "hh";
    std::string hac_lag_rule = "auto";
    std::string sampling = "annual";
    std::string out = "out";
    std::uint64_t seed = 20120101;
};

dpr::CsvSchema parse_schema(const std::string& text) {
    dpr::CsvSchema schema;
    if (text.empty()) return schema;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            throw dpr::DataError("bad --schema entry '" + pair + "', expected key=column");
        }
        const std::string key = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        if (key == "date") schema.date = value;
        else if (key == "R") schema.total_return = value;
        else if (key == "X") schema.exdiv_return = value;
        else if (key == "P") schema.price = value;
        else if (key == "RF") schema.risk_free = value;
        else throw dpr::DataError("unknown --schema key '" + key + "'");
    }
    return schema;
}

std::vector<std::string> parse_selection(const std::string& text,
                                         const std::vector<std::string>& known,
                                         const char* what) {
    std::vector<std::string> out;
    if (text == "all") return known;
    if (text.empty() || text == "none") return out;
    std::stringstream ss(text);
    std::string id;
    while (std::getline(ss, id, ',')) {
        if (id.empty()) continue;
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            throw dpr::DataError(std::string("unknown ") + what + " id '" + id + "'");
        }
        out.push_back(id);
    }
    return out;
}

dpr::tables::RunConfig make_config(const CliOptions& opt) {
    dpr::tables::RunConfig config;
    if (opt.data.empty()) throw dpr::DataError("--data is required");
    config.data_path = opt.data;
    config.schema = parse_schema(opt.schema);
    config.rho = opt.rho;
    if (opt.rho <= 0.0 || opt.rho > 1.0) throw dpr::DataError("--rho must be in (0, 1]");
    if (opt.hac == "hh") config.kernel = dpr::stats::HacKernel::hansen_hodrick;
    else if (opt.hac == "nw") config.kernel = dpr::stats::HacKernel::newey_west;
    else throw dpr::DataError("--hac must be hh or nw");
    if (opt.hac_lag_rule != "auto") {
        try {
            config.hac_lag = std::stoi(opt.hac_lag_rule);
        } catch (const std::exception&) {
            throw dpr::DataError("--hac-lag-rule must be 'auto' or an integer");
        }
        if (*config.hac_lag < 0) throw dpr::DataError("--hac-lag-rule must be non-negative");
    }
    if (opt.sampling == "annual") {
        config.annual_sampling = dpr::predict::Sampling::annual_december;
    } else if (opt.sampling == "overlap") {
        config.annual_sampling = dpr::predict::Sampling::overlapping_monthly;
    } else {
        throw dpr::DataError("--sampling must be annual or overlap");
    }
    config.seed = opt.seed;
    return config;
}

std::vector<dpr::tables::Panel> parse_panels(const std::string& text) {
    if (text == "A") return {dpr::tables::Panel::A};
    if (text == "B") return {dpr::tables::Panel::B};
    if (text == "both") return {dpr::tables::Panel::A, dpr::tables::Panel::B};
    throw dpr::DataError("--panel must be A, B or both");
}

int run_tables(const CliOptions& opt) {
    const auto ids = parse_selection(opt.tables, dpr::tables::all_table_ids(), "table");
    if (ids.empty()) {
        std::cout << "nothing selected, no tables written\n";
        return kExitOk;
    }
    const auto config = make_config(opt);
    const auto panels = parse_panels(opt.panel);
    const auto analysis = dpr::tables::analyze(config);
    const auto files = dpr::tables::write_tables(analysis, config, ids, panels, opt.out);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return kExitOk;
}

int run_figures(const CliOptions& opt) {
    const auto ids = parse_selection(opt.figures, dpr::tables::all_figure_ids(), "figure");
    if (ids.empty()) {
        std::cout << "nothing selected, no figures written\n";
        return kExitOk;
    }
    const auto config = make_config(opt);
    const auto analysis = dpr::tables::analyze(config);
    const auto files = dpr::tables::write_figures(analysis, config, ids, opt.out);
    for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    return kExitOk;
}

int run_selftest(const CliOptions& opt) {
    const dpr::selftest::Report report = dpr::selftest::run(opt.seed);
    for (const auto& suite : report.suites) {
        std::printf("%s %-28s statistic=%.6f  %s\n", suite.pass ? "PASS" : "FAIL",
                    suite.name.c_str(), suite.statistic, suite.detail.c_str());
    }
    std::printf("%s (seed %llu, %zu suites)\n", report.all_pass ? "ALL PASS" : "FAILURES PRESENT",
                static_cast<unsigned long long>(report.seed), report.suites.size());
    return report.all_pass ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpr: dividend-price ratio construction, cointegration and predictability"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* cmd, bool needs_data) {
        if (needs_data) {
            cmd->add_option("--data", opt.data, "monthly CSV input")->envname("DPR_DATA");
            cmd->add_option("--schema", opt.schema,
                            "column map, e.g. date=yyyymm,R=ret,X=ret_x,P=index,RF=tbill")
                ->envname("DPR_SCHEMA");
            cmd->add_option("--rho", opt.rho, "CS discount weight")->envname("DPR_RHO");
            cmd->add_option("--hac", opt.hac, "hh or nw")->envname("DPR_HAC");
            cmd->add_option("--hac-lag-rule", opt.hac_lag_rule, "'auto' (12h-1 / h-1) or a lag")
                ->envname("DPR_HAC_LAG_RULE");
            cmd->add_option("--sampling", opt.sampling,
                            "annual-table sampling: annual or overlap")
                ->envname("DPR_SAMPLING");
            cmd->add_option("--out", opt.out, "output directory")->envname("DPR_OUT");
        }
        cmd->add_option("--seed", opt.seed, "random seed")->envname("DPR_SEED");
    };

    CLI::App* tables_cmd = app.add_subcommand("tables", "emit analysis tables as CSV/Markdown");
    add_common(tables_cmd, true);
    tables_cmd->add_option("--tables", opt.tables, "comma list of ids or 'all'")
        ->envname("DPR_TABLES");
    tables_cmd->add_option("--panel", opt.panel, "A, B or both")->envname("DPR_PANEL");

    CLI::App* figures_cmd = app.add_subcommand("figures", "emit plot-ready figure data");
    add_common(figures_cmd, true);
    figures_cmd->add_option("--figures", opt.figures, "comma list of ids or 'all'")
        ->envname("DPR_FIGURES");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the Monte Carlo property suites");
    add_common(selftest_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (tables_cmd->parsed()) return run_tables(opt);
        if (figures_cmd->parsed()) return run_figures(opt);
        if (selftest_cmd->parsed()) return run_selftest(opt);
    } catch (const dpr::DataError& e) {
        std::cerr << "data/config error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data/config error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const dpr::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitOk;
}
