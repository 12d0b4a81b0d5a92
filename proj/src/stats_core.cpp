#include "dpr/stats_core.hpp"

#include <cmath>
#include <stdexcept>

#include "dpr/errors.hpp"

namespace dpr::stats {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean of empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("variance needs at least 2 points");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

double correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("correlation: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("correlation needs at least 2 points");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) throw std::invalid_argument("correlation of constant series");
    return sxy / std::sqrt(sxx * syy);
}

std::string kernel_name(HacKernel k) {
    return k == HacKernel::hansen_hodrick ? "hansen_hodrick" : "newey_west";
}

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, bool add_intercept) {
    const Eigen::Index n = y.size();
    if (X.rows() != n) throw std::invalid_argument("ols: row mismatch between y and X");

    Eigen::MatrixXd D;
    if (add_intercept) {
        D.resize(n, X.cols() + 1);
        D.col(0).setOnes();
        if (X.cols() > 0) D.rightCols(X.cols()) = X;
    } else {
        D = X;
    }
    const Eigen::Index k = D.cols();
    if (n <= k) throw std::invalid_argument("ols: more coefficients than observations");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    if (qr.rank() < k) throw NumericError("ols: singular design matrix");

    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - D * fit.coef;
    fit.design = std::move(D);
    fit.n_obs = static_cast<int>(n);
    fit.n_coef = static_cast<int>(k);
    fit.has_intercept = add_intercept;

    const double ssr = fit.residuals.squaredNorm();
    const double ym = y.mean();
    const double sst = (y.array() - ym).matrix().squaredNorm();
    // A numerically constant target has no variance to explain.
    const double sst_floor = 1e-20 * static_cast<double>(n) * (1.0 + ym * ym);
    fit.r_squared = sst > sst_floor ? 1.0 - ssr / sst : 0.0;

    fit.sigma2 = ssr / static_cast<double>(n - k);
    fit.xtx_inverse = (fit.design.transpose() * fit.design)
                          .ldlt()
                          .solve(Eigen::MatrixXd::Identity(k, k));
    return fit;
}

namespace {

Eigen::MatrixXd kernel_meat(const OlsFit& fit, HacKernel kernel, int lag) {
    const Eigen::Index n = fit.design.rows();
    const Eigen::Index k = fit.design.cols();
    // Score rows g_t = x_t * u_t.
    Eigen::MatrixXd G = fit.design.array().colwise() * fit.residuals.array();
    Eigen::MatrixXd S = G.transpose() * G;  // Gamma_0
    for (int j = 1; j <= lag; ++j) {
        const double w =
            kernel == HacKernel::hansen_hodrick ? 1.0 : 1.0 - static_cast<double>(j) / (lag + 1);
        Eigen::MatrixXd Gj = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index t = j; t < n; ++t) {
            Gj.noalias() += G.row(t).transpose() * G.row(t - j);
        }
        S += w * (Gj + Gj.transpose());
    }
    return S;
}

}  // namespace

HacCovariance hac_covariance(const OlsFit& fit, HacKernel kernel, int lag) {
    if (lag < 0) throw std::invalid_argument("hac_covariance: negative lag");
    if (lag >= fit.n_obs) throw std::invalid_argument("hac_covariance: lag >= n_obs");

    HacCovariance out;
    out.kernel = kernel;
    out.lag = lag;
    out.cov = fit.xtx_inverse * kernel_meat(fit, kernel, lag) * fit.xtx_inverse;

    if (kernel == HacKernel::hansen_hodrick && out.cov.diagonal().minCoeff() < 0.0) {
        out.cov = fit.xtx_inverse * kernel_meat(fit, HacKernel::newey_west, lag) * fit.xtx_inverse;
        out.newey_west_fallback = true;
    }
    return out;
}

Ar1Fit ar1(std::span<const double> series) {
    const size_t n = series.size();
    if (n < 3) throw std::invalid_argument("ar1: need at least 3 observations");

    Eigen::VectorXd y(n - 1);
    Eigen::MatrixXd X(n - 1, 1);
    for (size_t t = 1; t < n; ++t) {
        y(t - 1) = series[t];
        X(t - 1, 0) = series[t - 1];
    }
    if ((X.array() - X.mean()).abs().maxCoeff() < 1e-14) {
        throw NumericError("ar1: constant series");
    }
    OlsFit fit = ols(y, X);
    Ar1Fit out;
    out.intercept = fit.coef(0);
    out.phi = fit.coef(1);
    out.innovation_std = std::sqrt(fit.sigma2);
    return out;
}

double adf_critical_value(AdfSpec spec, double level, int n_obs) {
    // Response-surface constants from MacKinnon (2010), "Critical Values for
    // Cointegration Tests", QED working paper 1227, N = 1 case:
    // cv(T) = b_inf + b1/T + b2/T^2 + b3/T^3.
    struct Row {
        double binf, b1, b2, b3;
    };
    static constexpr Row none[3] = {
        {-2.56574, -2.2358, -3.627, 0.0},       // 1%
        {-1.94100, -0.2686, -3.365, 31.223},    // 5%
        {-1.61682, 0.2656, -2.714, 25.364},     // 10%
    };
    static constexpr Row constant[3] = {
        {-3.43035, -6.5393, -16.786, -79.433},
        {-2.86154, -2.8903, -4.234, -40.040},
        {-2.56677, -1.5384, -2.809, 0.0},
    };
    static constexpr Row trend[3] = {
        {-3.95877, -9.0531, -28.428, -134.155},
        {-3.41049, -4.3904, -9.036, -45.374},
        {-3.12705, -2.5856, -3.925, -22.380},
    };
    const Row* rows = spec == AdfSpec::none ? none
                      : spec == AdfSpec::constant ? constant
                                                  : trend;
    int idx;
    if (level == 0.01) idx = 0;
    else if (level == 0.05) idx = 1;
    else if (level == 0.10) idx = 2;
    else throw std::invalid_argument("adf_critical_value: level must be 0.01, 0.05 or 0.10");

    const double T = n_obs;
    const Row& r = rows[idx];
    return r.binf + r.b1 / T + r.b2 / (T * T) + r.b3 / (T * T * T);
}

AdfResult adf(std::span<const double> series, int lags, AdfSpec spec) {
    const int n = static_cast<int>(series.size());
    if (lags < 0) throw std::invalid_argument("adf: negative lag order");
    if (n <= lags + 2) throw std::invalid_argument("adf: series too short for lag order");

    // dy_t for t = lags+1 .. n-1 regressed on level, lagged differences, deterministics.
    const int rows = n - 1 - lags;
    const int det = spec == AdfSpec::none ? 0 : spec == AdfSpec::constant ? 1 : 2;
    Eigen::VectorXd y(rows);
    Eigen::MatrixXd X(rows, 1 + lags + (det == 2 ? 1 : 0));
    for (int i = 0; i < rows; ++i) {
        const int t = lags + 1 + i;
        y(i) = series[t] - series[t - 1];
        X(i, 0) = series[t - 1];
        for (int j = 1; j <= lags; ++j) {
            X(i, j) = series[t - j] - series[t - j - 1];
        }
        if (det == 2) X(i, 1 + lags) = t;
    }
    OlsFit fit = ols(y, X, det >= 1);
    const Eigen::Index level_ix = det >= 1 ? 1 : 0;  // after the intercept when present
    const double se = std::sqrt(fit.ols_covariance()(level_ix, level_ix));

    AdfResult res;
    res.statistic = fit.coef(level_ix) / se;
    res.lags = lags;
    res.spec = spec;
    res.crit_1pct = adf_critical_value(spec, 0.01, fit.n_obs);
    res.crit_5pct = adf_critical_value(spec, 0.05, fit.n_obs);
    res.crit_10pct = adf_critical_value(spec, 0.10, fit.n_obs);
    res.reject_1pct = res.statistic < res.crit_1pct;
    res.reject_5pct = res.statistic < res.crit_5pct;
    res.reject_10pct = res.statistic < res.crit_10pct;
    return res;
}

int select_var_lag(const Eigen::MatrixXd& levels, int max_lag) {
    const Eigen::Index T = levels.rows();
    const Eigen::Index n = levels.cols();
    if (max_lag < 1) throw std::invalid_argument("select_var_lag: max_lag must be >= 1");
    if (T < max_lag + 10 * n) throw std::invalid_argument("select_var_lag: insufficient rows");

    // Common estimation sample: rows max_lag .. T-1 regardless of candidate order.
    const Eigen::Index rows = T - max_lag;
    const double Teff = static_cast<double>(rows);

    int best_q = 1;
    double best_hq = std::numeric_limits<double>::infinity();
    for (int q = 1; q <= max_lag; ++q) {
        Eigen::MatrixXd X(rows, n * q);
        for (int j = 1; j <= q; ++j) {
            X.middleCols(n * (j - 1), n) = levels.middleRows(max_lag - j, rows);
        }
        Eigen::MatrixXd D(rows, n * q + 1);
        D.col(0).setOnes();
        D.rightCols(n * q) = X;
        const Eigen::MatrixXd Y = levels.bottomRows(rows);
        const Eigen::MatrixXd B = (D.transpose() * D).ldlt().solve(D.transpose() * Y);
        const Eigen::MatrixXd U = Y - D * B;
        const Eigen::MatrixXd sigma = U.transpose() * U / Teff;
        const double logdet = std::log(sigma.determinant());
        const double n_params = static_cast<double>(n * (n * q + 1));
        const double hq = logdet + 2.0 * std::log(std::log(Teff)) / Teff * n_params;
        if (hq < best_hq) {
            best_hq = hq;
            best_q = q;
        }
    }
    return best_q;
}

}  // namespace dpr::stats
