#pragma once

#include <Eigen/Dense>

namespace dpr::adl {

/// Autoregressive distributed lag fit
///   d_t = a0 + sum_{i=1..p} a_i d_{t-i} + sum_{j=0..q} b_j p_{t-j} + e_t
/// Coefficients are stored as [a0, a_1..a_p, b_0..b_q].
struct AdlFit {
    Eigen::VectorXd coef;
    int own_lags = 3;    ///< p
    int price_lags = 3;  ///< q
    Eigen::VectorXd residuals;
    Eigen::MatrixXd covariance;  ///< homoskedastic OLS coefficient covariance
    int n_obs = 0;

    [[nodiscard]] double own_lag_sum() const;    ///< sum of a_i
    [[nodiscard]] double price_coef_sum() const; ///< sum of b_j
};

AdlFit adl_fit(const Eigen::VectorXd& d, const Eigen::VectorXd& p, int own_lags = 3,
               int price_lags = 3);

/// Long-run solution d = alpha + beta p of an ADL fit, with a delta-method
/// standard error for beta built from a numerically differenced gradient.
struct LongRunSolution {
    double alpha = 0.0;
    double beta = 0.0;
    double se_beta = 0.0;
    double ecm_t = 0.0;          ///< (sum a_i - 1) / se, the no-cointegration statistic
    double restriction_t = 0.0;  ///< (beta - 1) / se_beta, H0: the [1,-1] long-run vector
};

/// Throws NumericError when |1 - sum a_i| <= 1e-6 (no long-run solution).
/// gradient_step scales the central-difference step per coefficient.
LongRunSolution long_run_solution(const AdlFit& fit, double gradient_step = 1e-5);

/// Unit-root style test of H0: 1 - sum a_i = 0 (no cointegration) against the
/// Ericsson-MacKinnon critical values for a two-variable relation with constant.
struct EcmCointegrationTest {
    double statistic = 0.0;
    double crit_1pct = 0.0;
    double crit_5pct = 0.0;
    double crit_10pct = 0.0;
    bool reject_1pct = false;
    bool reject_5pct = false;
    bool reject_10pct = false;
};

EcmCointegrationTest ecm_cointegration_test(const AdlFit& fit);

/// Ericsson-MacKinnon response-surface critical value (2 variables, constant).
double ecm_critical_value(double level, int n_obs);

}  // namespace dpr::adl
