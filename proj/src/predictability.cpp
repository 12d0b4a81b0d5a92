#include "dpr/predictability.hpp"

#include <cmath>
#include <stdexcept>

#include "dpr/errors.hpp"

namespace dpr::predict {

std::string target_name(Target t) {
    switch (t) {
        case Target::r: return "r";
        case Target::re: return "re";
        case Target::rf: return "rf";
        case Target::dd: return "dd";
        case Target::wr: return "wr";
        case Target::wg: return "wg";
        case Target::wre: return "wre";
        case Target::wrf: return "wrf";
        case Target::auto_term: return "auto";
    }
    return "?";
}

std::string predictor_name(Predictor p) {
    switch (p) {
        case Predictor::dp: return "dp";
        case Predictor::dstar_p: return "d*p";
        case Predictor::mdp: return "mdp";
        case Predictor::mdp_prime: return "mdp'";
    }
    return "?";
}

std::string sampling_name(Sampling s) {
    return s == Sampling::overlapping_monthly ? "overlapping_monthly" : "annual_december";
}

const PredictorSlope& RegressionResult::slope_on(Predictor p) const {
    for (const PredictorSlope& s : slopes) {
        if (s.predictor == p) return s;
    }
    throw std::invalid_argument("no slope for predictor " + predictor_name(p));
}

int default_hac_lag(Sampling sampling, int horizon) {
    return sampling == Sampling::overlapping_monthly ? 12 * horizon - 1 : horizon - 1;
}

namespace {

bool needs_rho(Target t) {
    switch (t) {
        case Target::wr:
        case Target::wg:
        case Target::wre:
        case Target::wrf:
        case Target::auto_term:
            return true;
        default:
            return false;
    }
}

const Eigen::VectorXd& predictor_series(const RatioPanel& ratios, Predictor p) {
    switch (p) {
        case Predictor::dp: return ratios.dp;
        case Predictor::dstar_p: return ratios.dstar_p;
        case Predictor::mdp: return ratios.mdp;
        case Predictor::mdp_prime: return ratios.mdp_prime;
    }
    throw std::invalid_argument("unknown predictor");
}

double target_value(const AnnualPanel& panel, const RatioPanel& ratios, Target target,
                    Eigen::Index t, int h, std::optional<double> rho) {
    switch (target) {
        case Target::r: return horizon_aggregate(panel, panel.r, t, h, std::nullopt);
        case Target::re: return horizon_aggregate(panel, panel.re, t, h, std::nullopt);
        case Target::rf: return horizon_aggregate(panel, panel.rf, t, h, std::nullopt);
        case Target::dd: return horizon_aggregate(panel, panel.dd, t, h, std::nullopt);
        case Target::wr: return horizon_aggregate(panel, panel.r, t, h, rho);
        case Target::wg: return horizon_aggregate(panel, panel.ddstar, t, h, rho);
        case Target::wre: return horizon_aggregate(panel, panel.re, t, h, rho);
        case Target::wrf: return horizon_aggregate(panel, panel.rf, t, h, rho);
        case Target::auto_term:
            return std::pow(*rho, h) * ratios.dstar_p(t + 12 * static_cast<Eigen::Index>(h));
    }
    throw std::invalid_argument("unknown target");
}

}  // namespace

RegressionResult run_regression(const RegressionSpec& spec, const AnnualPanel& panel,
                                const RatioPanel& ratios) {
    if (spec.horizon < 1) throw std::invalid_argument("run_regression: horizon must be >= 1");
    if (spec.predictors.empty()) throw std::invalid_argument("run_regression: no predictors");
    if (needs_rho(spec.target) && !spec.rho) {
        throw std::invalid_argument("run_regression: target " + target_name(spec.target) +
                                    " requires rho");
    }
    if (ratios.dp.size() != panel.rows()) {
        throw std::invalid_argument("run_regression: ratio panel not aligned");
    }

    Eigen::Index start_row = 0;
    if (spec.start) {
        const long ix = panel.index_of(*spec.start);
        if (ix < 0) {
            // Clamp a pre-sample start to the first row; a post-sample start is an error.
            if (*spec.start < panel.date.front()) {
                start_row = 0;
            } else {
                throw std::invalid_argument("run_regression: sample start outside panel");
            }
        } else {
            start_row = ix;
        }
    }

    const Eigen::Index horizon_months = static_cast<Eigen::Index>(12) * spec.horizon;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index t = start_row; t + horizon_months < panel.rows(); ++t) {
        if (spec.sampling == Sampling::annual_december && !panel.date[t].is_december()) continue;
        const double y = target_value(panel, ratios, spec.target, t, spec.horizon, spec.rho);
        if (!std::isfinite(y)) continue;  // incomplete growth history
        rows.push_back(t);
    }
    if (rows.size() < spec.predictors.size() + 2) {
        throw DataError("run_regression: empty sample after horizon trimming");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd y(n);
    Eigen::MatrixXd X(n, static_cast<Eigen::Index>(spec.predictors.size()));
    for (Eigen::Index i = 0; i < n; ++i) {
        y(i) = target_value(panel, ratios, spec.target, rows[i], spec.horizon, spec.rho);
        for (size_t j = 0; j < spec.predictors.size(); ++j) {
            X(i, static_cast<Eigen::Index>(j)) = predictor_series(ratios, spec.predictors[j])(rows[i]);
        }
    }

    stats::OlsFit fit = stats::ols(y, X);
    const int lag = spec.hac_lag ? *spec.hac_lag : default_hac_lag(spec.sampling, spec.horizon);
    if (lag >= fit.n_obs) {
        throw DataError("run_regression: HAC lag exceeds the effective sample");
    }
    const stats::HacCovariance hac = stats::hac_covariance(fit, spec.kernel, lag);

    RegressionResult out;
    out.spec = spec;
    out.intercept = fit.coef(0);
    out.intercept_t = fit.coef(0) / hac.se(0);
    out.r_squared = fit.r_squared;
    out.n_obs = fit.n_obs;
    out.hac_lag = lag;
    out.hac_fallback = hac.newey_west_fallback;
    for (size_t j = 0; j < spec.predictors.size(); ++j) {
        const Eigen::Index c = static_cast<Eigen::Index>(j) + 1;
        out.slopes.push_back({spec.predictors[j], fit.coef(c), fit.coef(c) / hac.se(c)});
    }
    return out;
}

CsDecomposition cs_decomposition(const AnnualPanel& panel, const RatioPanel& ratios, int horizon,
                                 double rho, const std::vector<Predictor>& predictors,
                                 std::optional<YearMonth> start, Sampling sampling,
                                 stats::HacKernel kernel) {
    RegressionSpec spec;
    spec.horizon = horizon;
    spec.predictors = predictors;
    spec.start = start;
    spec.rho = rho;
    spec.sampling = sampling;
    spec.kernel = kernel;

    CsDecomposition out;
    spec.target = Target::wr;
    out.returns = run_regression(spec, panel, ratios);
    spec.target = Target::wg;
    out.growth = run_regression(spec, panel, ratios);
    spec.target = Target::auto_term;
    out.auto_term = run_regression(spec, panel, ratios);

    out.slope_sum.reserve(predictors.size());
    for (size_t j = 0; j < predictors.size(); ++j) {
        out.slope_sum.push_back(out.returns.slopes[j].slope - out.growth.slopes[j].slope +
                                out.auto_term.slopes[j].slope);
    }
    return out;
}

CsBreakdown cs_breakdown(const AnnualPanel& panel, const RatioPanel& ratios, int horizon,
                         double rho, const std::vector<Predictor>& predictors,
                         std::optional<YearMonth> start, Sampling sampling,
                         stats::HacKernel kernel) {
    RegressionSpec spec;
    spec.horizon = horizon;
    spec.predictors = predictors;
    spec.start = start;
    spec.rho = rho;
    spec.sampling = sampling;
    spec.kernel = kernel;

    CsBreakdown out;
    spec.target = Target::wre;
    out.premium = run_regression(spec, panel, ratios);
    spec.target = Target::wrf;
    out.risk_free = run_regression(spec, panel, ratios);
    return out;
}

}  // namespace dpr::predict
