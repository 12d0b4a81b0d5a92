#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace dpr::johansen {

/// Deterministic term layout of the VECM. Only deterministic cointegration
/// (log series with linear trends, a constant inside the cointegration
/// relation) is supported; the embedded critical values belong to that case.
enum class VecmSpec {
    no_deterministics,
    restricted_constant,
    deterministic_cointegration,
    restricted_trend,
    unrestricted_trend,
};

/// Bivariate vector error-correction fit
///   dw_t = sum_{i=1..q} B_i dw_{t-i} + a (b'w_{t-1} + c0) + c1 + u_t
struct VecmFit {
    int lags = 0;             ///< q
    double lambda1 = 0.0;     ///< leading eigenvalue
    double lambda2 = 0.0;
    Eigen::Vector2d b;        ///< cointegration vector, first entry 1
    double beta = 0.0;        ///< the long-run coefficient, -b(1)
    double c0 = 0.0;          ///< constant inside the relation
    Eigen::Vector2d a;        ///< adjustment speeds
    std::vector<Eigen::Matrix2d> short_run;  ///< B_1..B_q
    Eigen::Vector2d c1;       ///< drift left outside the relation
    Eigen::MatrixXd residuals;  ///< n_obs x 2
    int n_obs = 0;            ///< effective observations after lag trimming

    // Moment matrices of the concentrated model, kept for restriction tests.
    Eigen::Matrix2d S00, S01, S11;
};

VecmFit vecm_fit(const Eigen::MatrixXd& w, int lags,
                 VecmSpec spec = VecmSpec::deterministic_cointegration);

struct RankHypothesis {
    int null_rank = 0;        ///< H0: rank <= null_rank
    double statistic = 0.0;
    double critical_5pct = 0.0;
    bool reject = false;
};

struct RankTestReport {
    std::string kind;  ///< "trace" or "max_eigenvalue"
    std::array<RankHypothesis, 2> hypotheses;
    int selected_rank = 0;  ///< first null not rejected (2 when both reject)
};

/// Trace statistics -T sum ln(1 - lambda_i) against the 5% critical values
/// for the deterministic-cointegration case.
RankTestReport trace_test(const VecmFit& fit);

/// Maximum-eigenvalue variant, -T ln(1 - lambda_1).
RankTestReport max_eigen_test(const VecmFit& fit);

struct RestrictionTest {
    double statistic = 0.0;  ///< likelihood ratio, chi-squared with df 1
    int df = 1;
    double crit_5pct = 3.841;
    double crit_1pct = 6.635;
    bool reject_5pct = false;
    bool reject_1pct = false;
    double restricted_lambda = 0.0;
};

/// Likelihood-ratio test that the cointegration space is spanned by b0
/// (e.g. [1, -1]). Requires a rank-1 fit.
RestrictionTest restriction_test(const VecmFit& fit, const Eigen::Vector2d& b0);

}  // namespace dpr::johansen
