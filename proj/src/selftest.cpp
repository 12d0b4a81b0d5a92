#include "dpr/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dpr/adl.hpp"
#include "dpr/johansen.hpp"
#include "dpr/oos_eval.hpp"
#include "dpr/predictability.hpp"
#include "dpr/ratios.hpp"
#include "dpr/stats_core.hpp"

namespace dpr::selftest {

std::uint64_t Rng::next() {
    // splitmix64; small, stable across platforms.
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 < 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::vector<double> simulate_random_walk(Rng& rng, int n, double sigma) {
    std::vector<double> x(n);
    double level = 0.0;
    for (int t = 0; t < n; ++t) {
        level += sigma * rng.normal();
        x[t] = level;
    }
    return x;
}

std::vector<double> simulate_ar1(Rng& rng, int n, double phi, double sigma) {
    std::vector<double> x(n);
    double level = 0.0;
    for (int t = 0; t < n; ++t) {
        level = phi * level + sigma * rng.normal();
        x[t] = level;
    }
    return x;
}

CointegratedPair simulate_cointegrated_pair(Rng& rng, int n, double beta, double error_phi,
                                            double error_sigma, double walk_sigma) {
    CointegratedPair out;
    out.w.resize(n, 2);
    double p = 0.0, e = 0.0;
    for (int t = 0; t < n; ++t) {
        p += walk_sigma * rng.normal();
        e = error_phi * e + error_sigma * rng.normal();
        out.w(t, 1) = p;
        out.w(t, 0) = beta * p + e;
    }
    return out;
}

MonthlySeries simulate_market(std::uint64_t seed, int n_months) {
    Rng rng(seed);
    // Log price: drift + random walk, expected return loading on the
    // stationary dividend-price deviation so long-horizon predictability
    // exists by construction.
    const double beta = 0.85;
    const double mu = 0.004;
    const double sigma_p = 0.04;
    const double phi_dev = 0.97;
    const double sigma_dev = 0.05;
    const double pull = 0.04;

    MonthlySeries series;
    series.records.reserve(n_months);
    double logp = std::log(100.0);
    double dev = 0.0;  // stationary deviation d - beta p - c
    const double c = std::log(0.04) - (beta - 1.0) * logp;  // anchors D12/P near 4% at t=0
    double rf_rate = 0.003;
    double prev_price = std::exp(logp);

    for (int t = 0; t < n_months; ++t) {
        logp += mu + pull * dev + sigma_p * rng.normal();
        dev = phi_dev * dev + sigma_dev * rng.normal();

        const double price = std::exp(logp);
        const double d12 = std::exp(beta * logp + c + dev);  // trailing annual dividend level
        const double flow = d12 / 12.0;

        MonthlyRecord rec;
        rec.date = YearMonth(1900, 1).plus_months(t);
        rec.price_level = price;
        rec.exdiv_return = price / prev_price;
        rec.total_return = rec.exdiv_return * (1.0 + flow / price);
        rf_rate = 0.003 + 0.99 * (rf_rate - 0.003) + 0.0001 * rng.normal();
        rf_rate = std::max(rf_rate, 0.0);
        rec.risk_free = 1.0 + rf_rate;
        prev_price = price;
        series.records.push_back(rec);
    }
    return series;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SuiteResult adf_size_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 500, n = 500;
    int rejections = 0;
    for (int r = 0; r < reps; ++r) {
        const std::vector<double> x = simulate_random_walk(rng, n);
        if (stats::adf(x, 2, stats::AdfSpec::constant).reject_5pct) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    return {"adf_size", rate >= 0.03 && rate <= 0.08, rate,
            "empirical size at nominal 5%, bounds [0.03, 0.08]"};
}

SuiteResult adf_power_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 500;
    int rejections = 0;
    for (int r = 0; r < reps; ++r) {
        const std::vector<double> x = simulate_ar1(rng, n, 0.5);
        if (stats::adf(x, 2, stats::AdfSpec::constant).reject_5pct) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    return {"adf_power", rate >= 0.95, rate, "power against AR(0.5), bound >= 0.95"};
}

SuiteResult johansen_recovery_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 2000;
    std::vector<double> errors;
    errors.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        const CointegratedPair pair = simulate_cointegrated_pair(rng, n, 0.5);
        errors.push_back(std::abs(johansen::vecm_fit(pair.w, 2).beta - 0.5));
    }
    const double med = median(errors);
    return {"johansen_beta_recovery", med < 0.02, med,
            "median |beta_hat - 0.5| at n=2000, bound < 0.02"};
}

SuiteResult johansen_trace_size_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 2000;
    int below = 0;
    for (int r = 0; r < reps; ++r) {
        // Independent drifting random walks: the null consistent with the
        // linear-trend case whose critical values are embedded.
        Eigen::MatrixXd w(n, 2);
        const std::vector<double> a = simulate_random_walk(rng, n);
        const std::vector<double> b = simulate_random_walk(rng, n);
        for (int t = 0; t < n; ++t) {
            w(t, 0) = a[t] + 0.08 * t;
            w(t, 1) = b[t] + 0.05 * t;
        }
        const auto report = johansen::trace_test(johansen::vecm_fit(w, 2));
        if (report.hypotheses[0].statistic < 15.49) ++below;
    }
    const double rate = static_cast<double>(below) / reps;
    return {"johansen_trace_size", rate >= 0.90, rate,
            "independent drifting walks below the 5% critical value, bound >= 0.90"};
}

SuiteResult johansen_trace_power_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 2000;
    int rejected = 0;
    for (int r = 0; r < reps; ++r) {
        const CointegratedPair pair = simulate_cointegrated_pair(rng, n, 0.5);
        const auto report = johansen::trace_test(johansen::vecm_fit(pair.w, 2));
        if (report.hypotheses[0].reject) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / reps;
    return {"johansen_trace_power", rate >= 0.90, rate,
            "cointegrated pair rejecting rank 0, bound >= 0.90"};
}

SuiteResult johansen_restriction_size_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 300, n = 2000;
    int rejected = 0;
    const Eigen::Vector2d b0(1.0, -1.0);
    for (int r = 0; r < reps; ++r) {
        const CointegratedPair pair = simulate_cointegrated_pair(rng, n, 1.0);
        const auto fit = johansen::vecm_fit(pair.w, 2);
        if (johansen::restriction_test(fit, b0).reject_5pct) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / reps;
    return {"johansen_restriction_size", rate >= 0.02 && rate <= 0.10, rate,
            "rejection rate when [1,-1] is true, bounds [0.02, 0.10]"};
}

SuiteResult adl_recovery_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 2000;
    std::vector<double> betas;
    betas.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        const CointegratedPair pair = simulate_cointegrated_pair(rng, n, 0.5);
        const adl::AdlFit fit = adl::adl_fit(pair.w.col(0), pair.w.col(1));
        betas.push_back(adl::long_run_solution(fit).beta);
    }
    std::vector<double> errors;
    errors.reserve(reps);
    for (double b : betas) errors.push_back(std::abs(b - 0.5));
    const double med = median(errors);
    return {"adl_beta_recovery", med < 0.03, med,
            "median |beta_hat - 0.5| at n=2000, bound < 0.03"};
}

SuiteResult ecm_size_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 300, n = 500;
    int rejected = 0;
    for (int r = 0; r < reps; ++r) {
        const std::vector<double> dv = simulate_random_walk(rng, n);
        const std::vector<double> pv = simulate_random_walk(rng, n);
        Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(dv.data(), n);
        Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(pv.data(), n);
        if (adl::ecm_cointegration_test(adl::adl_fit(d, p)).reject_5pct) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / reps;
    return {"ecm_size", rate >= 0.02 && rate <= 0.09, rate,
            "rejection rate for independent random walks, bounds [0.02, 0.09]"};
}

SuiteResult ecm_power_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 200, n = 500;
    int rejected = 0;
    for (int r = 0; r < reps; ++r) {
        // Strongly error-correcting: d_t = 0.3 d_{t-1} + 0.7*(0.5 p_t) + noise.
        std::vector<double> p = simulate_random_walk(rng, n);
        Eigen::VectorXd d(n), pv(n);
        double prev = 0.0;
        for (int t = 0; t < n; ++t) {
            prev = 0.3 * prev + 0.7 * 0.5 * p[t] + 0.05 * rng.normal();
            d(t) = prev;
            pv(t) = p[t];
        }
        if (adl::ecm_cointegration_test(adl::adl_fit(d, pv)).reject_5pct) ++rejected;
    }
    const double rate = static_cast<double>(rejected) / reps;
    return {"ecm_power", rate >= 0.95, rate,
            "rejection rate under strong error correction, bound >= 0.95"};
}

SuiteResult hac_l0_identity_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int n = 300;
    Eigen::VectorXd y(n);
    Eigen::MatrixXd X(n, 2);
    for (int t = 0; t < n; ++t) {
        X(t, 0) = rng.normal();
        X(t, 1) = rng.normal();
        y(t) = 1.0 + 0.5 * X(t, 0) - 0.25 * X(t, 1) + rng.normal();
    }
    const stats::OlsFit fit = stats::ols(y, X);
    const auto hh = stats::hac_covariance(fit, stats::HacKernel::hansen_hodrick, 0);
    const auto nw = stats::hac_covariance(fit, stats::HacKernel::newey_west, 0);

    // Independent White estimator: (X'X)^{-1} sum u_t^2 x_t x_t' (X'X)^{-1}.
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(3, 3);
    for (int t = 0; t < n; ++t) {
        meat += fit.residuals(t) * fit.residuals(t) * fit.design.row(t).transpose() *
                fit.design.row(t);
    }
    const Eigen::MatrixXd white = fit.xtx_inverse * meat * fit.xtx_inverse;
    const double scale = white.norm();
    const double err = std::max((hh.cov - white).norm(), (nw.cov - white).norm()) / scale;
    return {"hac_l0_identity", err < 1e-10, err,
            "relative gap between HAC(L=0) and White covariance, bound < 1e-10"};
}

SuiteResult hac_iid_suite(std::uint64_t seed) {
    Rng rng(seed);
    const int reps = 1000, n = 1000;
    std::vector<double> ratio_dev;
    ratio_dev.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        Eigen::VectorXd y(n);
        Eigen::MatrixXd X(n, 1);
        for (int t = 0; t < n; ++t) {
            X(t, 0) = rng.normal();
            y(t) = 0.3 * X(t, 0) + rng.normal();
        }
        const stats::OlsFit fit = stats::ols(y, X);
        const auto hac = stats::hac_covariance(fit, stats::HacKernel::hansen_hodrick, 12);
        const double t_ols = fit.coef(1) / std::sqrt(fit.ols_covariance()(1, 1));
        const double t_hac = fit.coef(1) / hac.se(1);
        ratio_dev.push_back(std::abs(t_hac / t_ols - 1.0));
    }
    const double med = median(ratio_dev);
    return {"hac_iid_consistency", med < 0.10, med,
            "median |t_HAC/t_OLS - 1| for iid residuals, bound < 0.10"};
}

SuiteResult ols_additivity_suite(std::uint64_t seed) {
    const MonthlySeries series = simulate_market(seed, 720);
    const AnnualPanel panel = build_annual_panel(series);
    const RatioPanel ratios = build_ratios(panel, 0.85, 0.88);

    double worst = 0.0;
    for (int h : {5, 7}) {
        const auto parts = predict::cs_breakdown(panel, ratios, h, 0.96,
                                                 {predict::Predictor::dstar_p,
                                                  predict::Predictor::mdp});
        predict::RegressionSpec spec;
        spec.target = predict::Target::wr;
        spec.horizon = h;
        spec.rho = 0.96;
        spec.sampling = predict::Sampling::annual_december;
        spec.predictors = {predict::Predictor::dstar_p, predict::Predictor::mdp};
        const auto wr = predict::run_regression(spec, panel, ratios);
        for (size_t j = 0; j < spec.predictors.size(); ++j) {
            worst = std::max(worst, std::abs(parts.premium.slopes[j].slope +
                                             parts.risk_free.slopes[j].slope -
                                             wr.slopes[j].slope));
        }
    }
    return {"ols_target_additivity", worst < 1e-8, worst,
            "max |slope(wre)+slope(wrf)-slope(wr)|, bound < 1e-8"};
}

SuiteResult cs_identity_suite(std::uint64_t seed) {
    const MonthlySeries series = simulate_market(seed + 17, 1044);
    const AnnualPanel panel = build_annual_panel(series);
    const RatioPanel ratios = build_ratios(panel, 0.85, 0.88);
    const int h = 5;
    const double rho = 0.96;

    // Identity in deviation form: the linearization constant drops out.
    std::vector<double> lhs, wr, wg, fut;
    for (Eigen::Index t : panel.december_rows()) {
        if (t + 12 * h >= panel.rows()) continue;
        if (!std::isfinite(horizon_aggregate(panel, panel.ddstar, t, h, rho))) continue;
        lhs.push_back(ratios.dstar_p(t));
        wr.push_back(horizon_aggregate(panel, panel.r, t, h, rho));
        wg.push_back(horizon_aggregate(panel, panel.ddstar, t, h, rho));
        fut.push_back(std::pow(rho, h) * ratios.dstar_p(t + 12 * h));
    }
    const double m_lhs = stats::mean(lhs), m_wr = stats::mean(wr), m_wg = stats::mean(wg),
                 m_fut = stats::mean(fut);
    std::vector<double> abs_resid;
    abs_resid.reserve(lhs.size());
    for (size_t i = 0; i < lhs.size(); ++i) {
        abs_resid.push_back(std::abs((lhs[i] - m_lhs) - ((wr[i] - m_wr) - (wg[i] - m_wg) +
                                                         (fut[i] - m_fut))));
    }
    const double rel = median(abs_resid) / stats::stddev(lhs);
    return {"cs_identity", rel < 0.10, rel,
            "median |identity residual| / std(d*p) at h=5, rho=0.96, bound < 0.10"};
}

SuiteResult oos_lookahead_suite(std::uint64_t seed) {
    MonthlySeries series = simulate_market(seed + 5, 600);
    const AnnualPanel panel = build_annual_panel(series);

    oos::OosScheme scheme;
    scheme.predictor = predict::Predictor::mdp;
    scheme.beta_mode = oos::BetaMode::recursive;
    scheme.target = predict::Target::r;
    scheme.horizon = 3;
    scheme.init_years = 15;
    scheme.johansen_lags = 2;
    const oos::OosReport base = oos::evaluate(scheme, panel);

    // Perturb everything after the cutoff month and rerun.
    const int cutoff = 400;
    MonthlySeries bent = series;
    for (size_t t = cutoff + 1; t < bent.records.size(); ++t) {
        MonthlyRecord& rec = bent.records[t];
        rec.exdiv_return *= 1.0 + 0.10 * std::sin(static_cast<double>(t));
        rec.total_return = rec.exdiv_return * 1.004;
        rec.price_level = bent.records[t - 1].price_level * rec.exdiv_return;
        rec.risk_free += 0.001;
    }
    const oos::OosReport bent_report = oos::evaluate(scheme, build_annual_panel(bent));

    const YearMonth cutoff_date = series.records[cutoff].date;
    double worst = 0.0;
    size_t compared = 0;
    for (size_t i = 0; i < base.rows.size() && i < bent_report.rows.size(); ++i) {
        if (base.rows[i].date > cutoff_date) break;
        if (base.rows[i].date != bent_report.rows[i].date) return {"oos_lookahead", false, 1.0,
                                                                   "forecast grids diverged"};
        worst = std::max(worst, std::abs(base.rows[i].forecast - bent_report.rows[i].forecast));
        ++compared;
    }
    const bool pass = compared > 50 && worst == 0.0;
    return {"oos_lookahead", pass, worst,
            "max |forecast change| from future-data perturbation, bound = 0"};
}

}  // namespace

Report run(std::uint64_t seed) {
    Report report;
    report.seed = seed;
    report.suites.push_back(adf_size_suite(seed + 1));
    report.suites.push_back(adf_power_suite(seed + 2));
    report.suites.push_back(johansen_recovery_suite(seed + 3));
    report.suites.push_back(johansen_trace_size_suite(seed + 4));
    report.suites.push_back(johansen_trace_power_suite(seed + 5));
    report.suites.push_back(johansen_restriction_size_suite(seed + 6));
    report.suites.push_back(adl_recovery_suite(seed + 7));
    report.suites.push_back(ecm_size_suite(seed + 8));
    report.suites.push_back(ecm_power_suite(seed + 9));
    report.suites.push_back(hac_l0_identity_suite(seed + 10));
    report.suites.push_back(hac_iid_suite(seed + 11));
    report.suites.push_back(ols_additivity_suite(seed + 12));
    report.suites.push_back(cs_identity_suite(seed + 13));
    report.suites.push_back(oos_lookahead_suite(seed + 14));
    report.all_pass = std::all_of(report.suites.begin(), report.suites.end(),
                                  [](const SuiteResult& s) { return s.pass; });
    return report;
}

}  // namespace dpr::selftest
