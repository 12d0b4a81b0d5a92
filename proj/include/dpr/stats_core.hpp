#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dpr::stats {

/// One least-squares fit. The assembled design matrix (intercept column first when
/// present) is kept so that covariance estimators can be computed afterwards.
struct OlsFit {
    Eigen::VectorXd coef;       ///< intercept first when present
    Eigen::VectorXd residuals;
    Eigen::MatrixXd design;     ///< n x k, as regressed
    double r_squared = 0.0;     ///< against the intercept-only baseline
    int n_obs = 0;
    int n_coef = 0;
    bool has_intercept = true;
    double sigma2 = 0.0;            ///< residual variance, (n - k) denominator
    Eigen::MatrixXd xtx_inverse;    ///< (X'X)^{-1}
    /// Homoskedastic OLS coefficient covariance sigma2 * (X'X)^{-1}.
    [[nodiscard]] Eigen::MatrixXd ols_covariance() const { return sigma2 * xtx_inverse; }
};

/// OLS of y on X. When add_intercept is set a leading column of ones is prepended.
/// Throws NumericError on a rank-deficient design.
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, bool add_intercept = true);

enum class HacKernel { hansen_hodrick, newey_west };

std::string kernel_name(HacKernel k);

/// HAC coefficient covariance for serially correlated residuals.
struct HacCovariance {
    Eigen::MatrixXd cov;
    HacKernel kernel = HacKernel::hansen_hodrick;
    int lag = 0;
    /// Hansen-Hodrick is not guaranteed positive semi-definite; when it yields a
    /// negative variance the Bartlett (Newey-West) weights are used instead and
    /// the substitution is flagged here.
    bool newey_west_fallback = false;

    [[nodiscard]] double se(Eigen::Index i) const { return std::sqrt(cov(i, i)); }
};

/// Kernel-weighted covariance of the fit's coefficients with truncation lag L.
/// Hansen-Hodrick weights autocovariances 0..L uniformly; Newey-West applies
/// Bartlett weights 1 - j/(L+1). L = 0 reduces both to the White (HC0) estimator.
HacCovariance hac_covariance(const OlsFit& fit, HacKernel kernel, int lag);

struct Ar1Fit {
    double phi = 0.0;
    double intercept = 0.0;
    double innovation_std = 0.0;
};

/// OLS of x_t on (1, x_{t-1}). Throws on a constant series.
Ar1Fit ar1(std::span<const double> series);

enum class AdfSpec { none, constant, constant_trend };

struct AdfResult {
    double statistic = 0.0;
    int lags = 0;
    AdfSpec spec = AdfSpec::constant;
    double crit_1pct = 0.0;
    double crit_5pct = 0.0;
    double crit_10pct = 0.0;
    bool reject_1pct = false;
    bool reject_5pct = false;
    bool reject_10pct = false;
};

/// Augmented Dickey-Fuller unit-root test: t-statistic on the lagged level in
///   dy_t = det + gamma*y_{t-1} + sum_i delta_i dy_{t-i} + e_t
/// compared against MacKinnon response-surface critical values.
AdfResult adf(std::span<const double> series, int lags, AdfSpec spec);

/// MacKinnon finite-sample critical value for the chosen deterministic spec.
/// level is one of 0.01, 0.05, 0.10.
double adf_critical_value(AdfSpec spec, double level, int n_obs);

/// Hannan-Quinn lag selection for a bivariate VAR in levels. All candidate
/// orders 1..max_lag are estimated on the common sample obtained by dropping
/// the first max_lag rows, so the criteria are comparable.
int select_var_lag(const Eigen::MatrixXd& levels, int max_lag);

// Small numeric helpers shared across modules.
double mean(std::span<const double> x);
double variance(std::span<const double> x);   ///< n-1 denominator
double stddev(std::span<const double> x);
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace dpr::stats
