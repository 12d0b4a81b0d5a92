#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpr/errors.hpp"
#include "dpr/selftest.hpp"
#include "dpr/stats_core.hpp"

using dpr::selftest::Rng;
namespace stats = dpr::stats;

namespace {

// Independent normal-equation solver: long-double Gaussian elimination, no
// Eigen on the solve path.
std::vector<double> normal_equation_solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int k = static_cast<int>(X.cols());
    std::vector<std::vector<long double>> A(k, std::vector<long double>(k + 1, 0.0L));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            long double s = 0.0L;
            for (int t = 0; t < X.rows(); ++t) s += (long double)X(t, i) * X(t, j);
            A[i][j] = s;
        }
        long double s = 0.0L;
        for (int t = 0; t < X.rows(); ++t) s += (long double)X(t, i) * y(t);
        A[i][k] = s;
    }
    for (int col = 0; col < k; ++col) {
        int pivot = col;
        for (int row = col + 1; row < k; ++row) {
            if (std::fabs((double)A[row][col]) > std::fabs((double)A[pivot][col])) pivot = row;
        }
        std::swap(A[col], A[pivot]);
        for (int row = 0; row < k; ++row) {
            if (row == col) continue;
            const long double f = A[row][col] / A[col][col];
            for (int j = col; j <= k; ++j) A[row][j] -= f * A[col][j];
        }
    }
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = static_cast<double>(A[i][k] / A[i][i]);
    return out;
}

}  // namespace

TEST_CASE("ols recovers an exact linear relation") {
    Eigen::VectorXd y(10);
    Eigen::MatrixXd X(10, 1);
    for (int i = 0; i < 10; ++i) {
        X(i, 0) = i;
        y(i) = 2.0 * i + 1.0;
    }
    const auto fit = stats::ols(y, X);
    CHECK(fit.coef(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.coef(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ols slope is zero for an orthogonal regressor") {
    // x and y zero-mean, constructed orthogonal.
    Eigen::VectorXd y(4), x(4);
    y << 1.0, -1.0, 1.0, -1.0;
    x << 1.0, 1.0, -1.0, -1.0;
    const auto fit = stats::ols(y, x);
    CHECK(std::abs(fit.coef(1)) < 1e-14);
}

TEST_CASE("ols matches an independent normal-equation solve") {
    Rng rng(7);
    Eigen::VectorXd y(20);
    Eigen::MatrixXd X(20, 3);
    for (int t = 0; t < 20; ++t) {
        for (int j = 0; j < 3; ++j) X(t, j) = rng.normal();
        y(t) = 0.4 - 0.8 * X(t, 0) + 1.7 * X(t, 1) + rng.normal();
    }
    const auto fit = stats::ols(y, X);
    Eigen::MatrixXd D(20, 4);
    D.col(0).setOnes();
    D.rightCols(3) = X;
    const auto oracle = normal_equation_solve(D, y);
    for (int j = 0; j < 4; ++j) {
        CHECK(fit.coef(j) == doctest::Approx(oracle[j]).epsilon(1e-9));
    }
}

TEST_CASE("ols residuals are orthogonal to the design and R2 is bounded") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd y(60);
        Eigen::MatrixXd X(60, 2);
        for (int t = 0; t < 60; ++t) {
            X(t, 0) = rng.normal();
            X(t, 1) = 0.3 * X(t, 0) + rng.normal();
            y(t) = 1.0 + X(t, 0) - X(t, 1) + 2.0 * rng.normal();
        }
        const auto fit = stats::ols(y, X);
        const Eigen::VectorXd cross = fit.design.transpose() * fit.residuals;
        const double scale = fit.design.norm() * fit.residuals.norm() + 1e-12;
        CHECK(cross.norm() / scale < 1e-8);
        CHECK(fit.r_squared >= 0.0);
        CHECK(fit.r_squared <= 1.0);
    }
}

TEST_CASE("ols rejects a rank-deficient design") {
    Eigen::VectorXd y(12);
    Eigen::MatrixXd X(12, 2);
    for (int t = 0; t < 12; ++t) {
        X(t, 0) = t;
        X(t, 1) = 2.0 * t;  // collinear
        y(t) = t;
    }
    CHECK_THROWS_AS(stats::ols(y, X), dpr::NumericError);
}

TEST_CASE("hac with L=0 equals the White covariance for both kernels") {
    Rng rng(3);
    Eigen::VectorXd y(80);
    Eigen::MatrixXd X(80, 2);
    for (int t = 0; t < 80; ++t) {
        X(t, 0) = rng.normal();
        X(t, 1) = rng.normal();
        y(t) = 0.5 * X(t, 0) + (1.0 + 0.5 * std::abs(X(t, 1))) * rng.normal();
    }
    const auto fit = stats::ols(y, X);
    const auto hh = stats::hac_covariance(fit, stats::HacKernel::hansen_hodrick, 0);
    const auto nw = stats::hac_covariance(fit, stats::HacKernel::newey_west, 0);

    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(3, 3);
    for (int t = 0; t < 80; ++t) {
        meat += fit.residuals(t) * fit.residuals(t) * fit.design.row(t).transpose() *
                fit.design.row(t);
    }
    const Eigen::MatrixXd white = fit.xtx_inverse * meat * fit.xtx_inverse;
    CHECK((hh.cov - white).norm() / white.norm() < 1e-12);
    CHECK((nw.cov - white).norm() / white.norm() < 1e-12);
}

TEST_CASE("hac standard errors follow a regressor reordering") {
    Rng rng(5);
    Eigen::VectorXd y(120);
    Eigen::MatrixXd X(120, 2);
    for (int t = 0; t < 120; ++t) {
        X(t, 0) = rng.normal();
        X(t, 1) = rng.normal() + 0.5;
        y(t) = 0.3 * X(t, 0) - 0.7 * X(t, 1) + rng.normal();
    }
    Eigen::MatrixXd Xr(120, 2);
    Xr.col(0) = X.col(1);
    Xr.col(1) = X.col(0);

    const auto f1 = stats::ols(y, X);
    const auto f2 = stats::ols(y, Xr);
    const auto h1 = stats::hac_covariance(f1, stats::HacKernel::newey_west, 6);
    const auto h2 = stats::hac_covariance(f2, stats::HacKernel::newey_west, 6);
    CHECK(h1.se(1) == doctest::Approx(h2.se(2)).epsilon(1e-10));
    CHECK(h1.se(2) == doctest::Approx(h2.se(1)).epsilon(1e-10));
    CHECK(h1.se(0) == doctest::Approx(h2.se(0)).epsilon(1e-10));
}

TEST_CASE("hac t-stats agree with OLS t-stats for iid residuals") {
    Rng rng(13);
    std::vector<double> dev;
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::VectorXd y(1000);
        Eigen::MatrixXd X(1000, 1);
        for (int t = 0; t < 1000; ++t) {
            X(t, 0) = rng.normal();
            y(t) = 0.3 * X(t, 0) + rng.normal();
        }
        const auto fit = stats::ols(y, X);
        const auto hac = stats::hac_covariance(fit, stats::HacKernel::hansen_hodrick, 12);
        const double t_ols = fit.coef(1) / std::sqrt(fit.ols_covariance()(1, 1));
        const double t_hac = fit.coef(1) / hac.se(1);
        dev.push_back(std::abs(t_hac / t_ols - 1.0));
    }
    std::sort(dev.begin(), dev.end());
    CHECK(dev[dev.size() / 2] < 0.10);
}

TEST_CASE("hansen-hodrick falls back to bartlett weights on a negative variance") {
    // Alternating residuals on an intercept-only design: Gamma_0 = n,
    // Gamma_1 = -(n-1), so the uniform-weight variance at L = 1 is negative.
    const int n = 40;
    stats::OlsFit fit;
    fit.design = Eigen::MatrixXd::Ones(n, 1);
    fit.residuals.resize(n);
    for (int t = 0; t < n; ++t) fit.residuals(t) = t % 2 == 0 ? 1.0 : -1.0;
    fit.n_obs = n;
    fit.n_coef = 1;
    fit.xtx_inverse = Eigen::MatrixXd::Constant(1, 1, 1.0 / n);

    const auto hac = stats::hac_covariance(fit, stats::HacKernel::hansen_hodrick, 1);
    CHECK(hac.newey_west_fallback);
    CHECK(hac.cov(0, 0) >= 0.0);

    const auto nw = stats::hac_covariance(fit, stats::HacKernel::newey_west, 1);
    CHECK_FALSE(nw.newey_west_fallback);
    CHECK(hac.cov(0, 0) == doctest::Approx(nw.cov(0, 0)));
}

TEST_CASE("hac rejects a lag at or beyond the sample size") {
    Rng rng(1);
    Eigen::VectorXd y(30);
    Eigen::MatrixXd X(30, 1);
    for (int t = 0; t < 30; ++t) {
        X(t, 0) = rng.normal();
        y(t) = rng.normal();
    }
    const auto fit = stats::ols(y, X);
    CHECK_THROWS_AS(stats::hac_covariance(fit, stats::HacKernel::newey_west, 30),
                    std::invalid_argument);
}

TEST_CASE("ar1 of white noise is near zero") {
    Rng rng(17);
    std::vector<double> x(10000);
    for (double& v : x) v = rng.normal();
    CHECK(std::abs(stats::ar1(x).phi) < 0.05);
}

TEST_CASE("ar1 recovers a persistent coefficient") {
    Rng rng(19);
    const auto x = dpr::selftest::simulate_ar1(rng, 20000, 0.8);
    CHECK(stats::ar1(x).phi == doctest::Approx(0.8).epsilon(0.05));
}

TEST_CASE("ar1 rejects a constant series") {
    const std::vector<double> x(50, 3.14);
    CHECK_THROWS_AS(stats::ar1(x), dpr::NumericError);
}

TEST_CASE("adf monte carlo size on a pure random walk") {
    Rng rng(23);
    int rejections = 0;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        const auto x = dpr::selftest::simulate_random_walk(rng, 500);
        if (stats::adf(x, 2, stats::AdfSpec::constant).reject_5pct) ++rejections;
    }
    const double rate = double(rejections) / reps;
    CHECK(rate >= 0.0);
    CHECK(rate <= 0.12);
}

TEST_CASE("adf monte carlo power against AR(0.5)") {
    Rng rng(29);
    int rejections = 0;
    const int reps = 50;
    for (int r = 0; r < reps; ++r) {
        const auto x = dpr::selftest::simulate_ar1(rng, 500, 0.5);
        if (stats::adf(x, 2, stats::AdfSpec::constant).reject_5pct) ++rejections;
    }
    CHECK(double(rejections) / reps >= 0.95);
}

TEST_CASE("adf critical values match the response-surface asymptotes") {
    CHECK(stats::adf_critical_value(stats::AdfSpec::constant, 0.05, 1000000) ==
          doctest::Approx(-2.86154).epsilon(1e-4));
    CHECK(stats::adf_critical_value(stats::AdfSpec::none, 0.05, 1000000) ==
          doctest::Approx(-1.941).epsilon(1e-4));
    CHECK(stats::adf_critical_value(stats::AdfSpec::constant_trend, 0.01, 1000000) ==
          doctest::Approx(-3.95877).epsilon(1e-4));
    // Finite-sample values are strictly more negative.
    CHECK(stats::adf_critical_value(stats::AdfSpec::constant, 0.05, 100) <
          stats::adf_critical_value(stats::AdfSpec::constant, 0.05, 10000));
}

TEST_CASE("adf rejects series that are too short") {
    const std::vector<double> x(5, 1.0);
    CHECK_THROWS_AS(stats::adf(x, 4, stats::AdfSpec::constant), std::invalid_argument);
}

TEST_CASE("select_var_lag finds a true VAR(2) most of the time") {
    Rng rng(31);
    int hits = 0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) {
        const int n = 2000;
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, 2);
        Eigen::Vector2d x1 = Eigen::Vector2d::Zero(), x2 = Eigen::Vector2d::Zero();
        Eigen::Matrix2d A1, A2;
        A1 << 0.5, 0.1, -0.2, 0.4;
        A2 << -0.3, 0.0, 0.1, -0.25;
        for (int t = 0; t < n; ++t) {
            Eigen::Vector2d eps(rng.normal(), rng.normal());
            Eigen::Vector2d x = A1 * x1 + A2 * x2 + eps;
            w.row(t) = x.transpose();
            x2 = x1;
            x1 = x;
        }
        if (stats::select_var_lag(w, 6) == 2) ++hits;
    }
    CHECK(double(hits) / reps >= 0.80);
}

TEST_CASE("select_var_lag with max_lag 1 returns 1") {
    Rng rng(37);
    Eigen::MatrixXd w(300, 2);
    for (int t = 0; t < 300; ++t) {
        w(t, 0) = rng.normal();
        w(t, 1) = rng.normal();
    }
    CHECK(stats::select_var_lag(w, 1) == 1);
}
