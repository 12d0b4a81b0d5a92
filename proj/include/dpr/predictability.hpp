#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpr/ratios.hpp"
#include "dpr/series_store.hpp"
#include "dpr/stats_core.hpp"

namespace dpr::predict {

enum class Target {
    r,          ///< h-year log total return
    re,         ///< h-year log equity premium
    rf,         ///< h-year log risk-free return
    dd,         ///< h-year summed-dividend growth
    wr,         ///< rho-weighted h-year return
    wg,         ///< rho-weighted h-year reinvested-dividend growth
    wre,        ///< rho-weighted h-year equity premium
    wrf,        ///< rho-weighted h-year risk-free return
    auto_term,  ///< rho^h * dstar_p_{t+h}
};

enum class Predictor { dp, dstar_p, mdp, mdp_prime };

enum class Sampling { overlapping_monthly, annual_december };

std::string target_name(Target t);
std::string predictor_name(Predictor p);
std::string sampling_name(Sampling s);

/// One forecasting regression: target(h) on one or more current-dated ratios.
struct RegressionSpec {
    Target target = Target::r;
    int horizon = 1;  ///< years
    std::vector<Predictor> predictors;
    std::optional<YearMonth> start;  ///< sample start; panel start when absent
    std::optional<double> rho;       ///< required by the weighted targets
    Sampling sampling = Sampling::overlapping_monthly;
    stats::HacKernel kernel = stats::HacKernel::hansen_hodrick;
    std::optional<int> hac_lag;  ///< default: 12h-1 overlapping, h-1 annual
};

struct PredictorSlope {
    Predictor predictor;
    double slope = 0.0;
    double t_stat = 0.0;
};

struct RegressionResult {
    std::vector<PredictorSlope> slopes;
    double intercept = 0.0;
    double intercept_t = 0.0;
    double r_squared = 0.0;
    int n_obs = 0;
    int hac_lag = 0;
    bool hac_fallback = false;  ///< Hansen-Hodrick replaced by Newey-West
    RegressionSpec spec;

    [[nodiscard]] const PredictorSlope& slope_on(Predictor p) const;
};

/// Default truncation lag for the HAC covariance: the moving-average order
/// induced by an h-year overlapping sum at the given sampling frequency.
int default_hac_lag(Sampling sampling, int horizon);

RegressionResult run_regression(const RegressionSpec& spec, const AnnualPanel& panel,
                                const RatioPanel& ratios);

/// The three weighted regressions that decompose ratio variability into
/// future returns, dividend growth and the discounted future ratio, plus the
/// slope-sum diagnostic per predictor (slope_wr - slope_wg + slope_auto).
struct CsDecomposition {
    RegressionResult returns;      ///< target wr
    RegressionResult growth;       ///< target wg
    RegressionResult auto_term;    ///< target rho^h dstar_p_{t+h}
    std::vector<double> slope_sum; ///< aligned with the predictor list
};

CsDecomposition cs_decomposition(const AnnualPanel& panel, const RatioPanel& ratios, int horizon,
                                 double rho, const std::vector<Predictor>& predictors,
                                 std::optional<YearMonth> start = std::nullopt,
                                 Sampling sampling = Sampling::annual_december,
                                 stats::HacKernel kernel = stats::HacKernel::hansen_hodrick);

/// Same machinery with the weighted return split into its equity-premium and
/// risk-free components.
struct CsBreakdown {
    RegressionResult premium;    ///< target wre
    RegressionResult risk_free;  ///< target wrf
};

CsBreakdown cs_breakdown(const AnnualPanel& panel, const RatioPanel& ratios, int horizon,
                         double rho, const std::vector<Predictor>& predictors,
                         std::optional<YearMonth> start = std::nullopt,
                         Sampling sampling = Sampling::annual_december,
                         stats::HacKernel kernel = stats::HacKernel::hansen_hodrick);

}  // namespace dpr::predict
