#include "dpr/adl.hpp"

#include <cmath>
#include <stdexcept>

#include "dpr/errors.hpp"
#include "dpr/stats_core.hpp"

namespace dpr::adl {

double AdlFit::own_lag_sum() const { return coef.segment(1, own_lags).sum(); }
double AdlFit::price_coef_sum() const { return coef.tail(price_lags + 1).sum(); }

AdlFit adl_fit(const Eigen::VectorXd& d, const Eigen::VectorXd& p, int own_lags, int price_lags) {
    if (d.size() != p.size()) throw std::invalid_argument("adl_fit: series length mismatch");
    if (own_lags < 1 || price_lags < 0) throw std::invalid_argument("adl_fit: bad lag orders");
    const Eigen::Index T = d.size();
    const int maxlag = std::max(own_lags, price_lags);
    if (T <= maxlag + 20) throw std::invalid_argument("adl_fit: series too short");

    const Eigen::Index rows = T - maxlag;
    Eigen::VectorXd y(rows);
    Eigen::MatrixXd X(rows, own_lags + price_lags + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index t = maxlag + i;
        y(i) = d(t);
        for (int k = 1; k <= own_lags; ++k) X(i, k - 1) = d(t - k);
        for (int k = 0; k <= price_lags; ++k) X(i, own_lags + k) = p(t - k);
    }
    stats::OlsFit ols = stats::ols(y, X);

    AdlFit fit;
    fit.coef = ols.coef;
    fit.own_lags = own_lags;
    fit.price_lags = price_lags;
    fit.residuals = ols.residuals;
    fit.covariance = ols.ols_covariance();
    fit.n_obs = ols.n_obs;
    return fit;
}

namespace {

double long_run_beta(const Eigen::VectorXd& coef, int own_lags, int price_lags) {
    const double denom = 1.0 - coef.segment(1, own_lags).sum();
    return coef.tail(price_lags + 1).sum() / denom;
}

}  // namespace

LongRunSolution long_run_solution(const AdlFit& fit, double gradient_step) {
    const double denom = 1.0 - fit.own_lag_sum();
    if (std::abs(denom) <= 1e-6) {
        throw NumericError("long_run_solution: own-lag sum too close to 1, no long-run solution");
    }

    LongRunSolution out;
    out.alpha = fit.coef(0) / denom;
    out.beta = fit.price_coef_sum() / denom;

    // Delta method with a central-difference gradient of beta in the ADL
    // coefficients; step scaled per coefficient.
    const Eigen::Index k = fit.coef.size();
    Eigen::VectorXd grad(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double h = gradient_step * std::max(1.0, std::abs(fit.coef(i)));
        Eigen::VectorXd up = fit.coef, down = fit.coef;
        up(i) += h;
        down(i) -= h;
        grad(i) = (long_run_beta(up, fit.own_lags, fit.price_lags) -
                   long_run_beta(down, fit.own_lags, fit.price_lags)) /
                  (2.0 * h);
    }
    const double var_beta = grad.dot(fit.covariance * grad);
    out.se_beta = std::sqrt(std::max(var_beta, 0.0));

    // Sum restriction statistic: t of (sum a_i - 1).
    Eigen::VectorXd sel = Eigen::VectorXd::Zero(k);
    sel.segment(1, fit.own_lags).setOnes();
    const double se_sum = std::sqrt(sel.dot(fit.covariance * sel));
    out.ecm_t = (fit.own_lag_sum() - 1.0) / se_sum;

    out.restriction_t = (out.beta - 1.0) / out.se_beta;
    return out;
}

double ecm_critical_value(double level, int n_obs) {
    // Ericsson-MacKinnon (2002) ECM cointegration test, K = 2 variables,
    // constant included: cv(T) = t_inf + t1/T + t2/T^2.
    struct Row {
        double tinf, t1, t2;
    };
    static constexpr Row rows[3] = {
        {-3.7899, -10.86, -60.0},  // 1%
        {-3.2106, -4.77, -26.0},   // 5%
        {-2.9107, -2.66, -11.0},   // 10%
    };
    int idx;
    if (level == 0.01) idx = 0;
    else if (level == 0.05) idx = 1;
    else if (level == 0.10) idx = 2;
    else throw std::invalid_argument("ecm_critical_value: level must be 0.01, 0.05 or 0.10");
    const double T = n_obs;
    return rows[idx].tinf + rows[idx].t1 / T + rows[idx].t2 / (T * T);
}

EcmCointegrationTest ecm_cointegration_test(const AdlFit& fit) {
    Eigen::VectorXd sel = Eigen::VectorXd::Zero(fit.coef.size());
    sel.segment(1, fit.own_lags).setOnes();
    const double se_sum = std::sqrt(sel.dot(fit.covariance * sel));

    EcmCointegrationTest out;
    out.statistic = (fit.own_lag_sum() - 1.0) / se_sum;
    out.crit_1pct = ecm_critical_value(0.01, fit.n_obs);
    out.crit_5pct = ecm_critical_value(0.05, fit.n_obs);
    out.crit_10pct = ecm_critical_value(0.10, fit.n_obs);
    out.reject_1pct = out.statistic < out.crit_1pct;
    out.reject_5pct = out.statistic < out.crit_5pct;
    out.reject_10pct = out.statistic < out.crit_10pct;
    return out;
}

}  // namespace dpr::adl
