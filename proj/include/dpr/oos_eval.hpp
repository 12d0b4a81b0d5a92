#pragma once

#include <optional>
#include <vector>

#include "dpr/predictability.hpp"
#include "dpr/ratios.hpp"
#include "dpr/series_store.hpp"

namespace dpr::oos {

enum class BetaMode { none, population, recursive };

/// One walk-forward evaluation design. The sample start pins the data an
/// evaluator is allowed to see (the subperiod analysis simply starts later);
/// forecasts begin once init_years of data have accumulated.
struct OosScheme {
    predict::Predictor predictor = predict::Predictor::dp;
    BetaMode beta_mode = BetaMode::none;
    predict::Target target = predict::Target::r;  ///< r or re
    int horizon = 5;                               ///< years
    std::optional<YearMonth> sample_start;         ///< panel start when absent
    int init_years = 15;
    std::optional<YearMonth> eval_end;             ///< last forecast origin; data end when absent
    BetaEngine engine = BetaEngine::johansen;
    int johansen_lags = 6;
};

struct ForecastRow {
    YearMonth date;
    double forecast = 0.0;
    double benchmark = 0.0;
    double realized = 0.0;
    double beta_used = 0.0;  ///< NaN for the classical ratios
};

struct OosReport {
    double r2_os = 0.0;
    int n_forecasts = 0;
    std::vector<ForecastRow> rows;
    OosScheme scheme;
};

/// 1 - sum (realized - forecast)^2 / sum (realized - benchmark)^2. Zero when
/// every forecast equals the benchmark, one under perfect foresight.
double r2_out_of_sample(const std::vector<ForecastRow>& rows);

/// Campbell-Thompson out-of-sample R^2 against the expanding historical-mean
/// benchmark. Forecasts at month t use only data dated <= t, except for the
/// fixed coefficient in population mode, which is the scheme's documented
/// exception. A precomputed recursive path (aligned to the restricted panel)
/// may be supplied to avoid refitting; population mode requires the
/// population beta.
OosReport evaluate(const OosScheme& scheme, const AnnualPanel& panel,
                   const BetaPath* recursive_path = nullptr,
                   std::optional<double> population_beta = std::nullopt);

}  // namespace dpr::oos
