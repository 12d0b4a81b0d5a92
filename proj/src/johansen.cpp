#include "dpr/johansen.hpp"

#include <cmath>
#include <stdexcept>

#include "dpr/errors.hpp"

namespace dpr::johansen {

namespace {

// 5% asymptotic critical values for the case with an unrestricted constant
// (linear trends in the data, constant absorbed by the cointegration
// relation), n - r = 2 and 1. Osterwald-Lenum (1992) / MacKinnon-Haug-Michelis.
constexpr double kTrace5pct[2] = {15.4947, 3.8415};
constexpr double kMaxEig5pct[2] = {14.2646, 3.8415};

}  // namespace

VecmFit vecm_fit(const Eigen::MatrixXd& w, int lags, VecmSpec spec) {
    if (spec != VecmSpec::deterministic_cointegration) {
        throw std::invalid_argument(
            "vecm_fit: only the deterministic-cointegration case is supported "
            "(critical values are embedded for that case alone)");
    }
    if (w.cols() != 2) throw std::invalid_argument("vecm_fit: expected a 2-column matrix");
    if (lags < 0) throw std::invalid_argument("vecm_fit: negative lag count");
    const Eigen::Index T = w.rows();
    if (T <= 2 * lags + 10) throw std::invalid_argument("vecm_fit: insufficient rows");

    const Eigen::Index n_eff = T - 1 - lags;
    const Eigen::Index kz = 2 * lags + 1;

    // dw_t regressed on (dw_{t-1}..dw_{t-q}, 1); w_{t-1} on the same.
    Eigen::MatrixXd dw = w.bottomRows(T - 1) - w.topRows(T - 1);  // row i = dw_{i+1}
    Eigen::MatrixXd Z0(n_eff, 2), Z1(n_eff, 2), Z2(n_eff, kz);
    for (Eigen::Index i = 0; i < n_eff; ++i) {
        const Eigen::Index t = lags + i;  // index into dw: dw_t with t >= lags
        Z0.row(i) = dw.row(t);
        Z1.row(i) = w.row(t);  // w_{t-1} in level indexing
        for (int j = 1; j <= lags; ++j) {
            Z2.block(i, 2 * (j - 1), 1, 2) = dw.row(t - j);
        }
        Z2(i, kz - 1) = 1.0;
    }

    const Eigen::MatrixXd z2tz2 = Z2.transpose() * Z2;
    Eigen::LDLT<Eigen::MatrixXd> z2solver(z2tz2);
    if (z2solver.info() != Eigen::Success) {
        throw NumericError("vecm_fit: singular short-run design");
    }
    const Eigen::MatrixXd R0 = Z0 - Z2 * z2solver.solve(Z2.transpose() * Z0);
    const Eigen::MatrixXd R1 = Z1 - Z2 * z2solver.solve(Z2.transpose() * Z1);

    const double scale = static_cast<double>(n_eff);
    const Eigen::Matrix2d S00 = R0.transpose() * R0 / scale;
    const Eigen::Matrix2d S01 = R0.transpose() * R1 / scale;
    const Eigen::Matrix2d S11 = R1.transpose() * R1 / scale;

    Eigen::LLT<Eigen::Matrix2d> s00chol(S00);
    Eigen::LLT<Eigen::Matrix2d> s11chol(S11);
    if (s00chol.info() != Eigen::Success || s11chol.info() != Eigen::Success) {
        throw NumericError("vecm_fit: singular moment matrix");
    }

    // Whiten S11 and solve the symmetric eigenproblem for
    // S11^{-1} S10 S00^{-1} S01; real eigenvalues guaranteed.
    const Eigen::Matrix2d L = s11chol.matrixL();
    const Eigen::Matrix2d inner = S01.transpose() * s00chol.solve(S01);  // S10 S00^{-1} S01
    const Eigen::Matrix2d Linv_inner =
        L.triangularView<Eigen::Lower>().solve(inner);
    const Eigen::Matrix2d M =
        L.triangularView<Eigen::Lower>().solve(Linv_inner.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(0.5 * (M + M.transpose()));
    if (eig.info() != Eigen::Success) throw NumericError("vecm_fit: eigen solve failed");

    VecmFit fit;
    fit.lags = lags;
    fit.n_obs = static_cast<int>(n_eff);
    fit.S00 = S00;
    fit.S01 = S01;
    fit.S11 = S11;
    fit.lambda1 = eig.eigenvalues()(1);  // ascending order in Eigen
    fit.lambda2 = eig.eigenvalues()(0);
    if (fit.lambda1 >= 1.0 || fit.lambda2 < -1e-10) {
        throw NumericError("vecm_fit: eigenvalues outside [0, 1)");
    }
    fit.lambda2 = std::max(fit.lambda2, 0.0);

    // Back-transform the leading whitened eigenvector: b solves L' b = v.
    const Eigen::Vector2d v = eig.eigenvectors().col(1);
    Eigen::Vector2d b_raw = L.transpose().triangularView<Eigen::Upper>().solve(v);
    if (std::abs(b_raw(0)) < 1e-12 * b_raw.norm()) {
        throw NumericError("vecm_fit: cointegration vector not normalizable on d");
    }
    fit.b = b_raw / b_raw(0);
    fit.beta = -fit.b(1);

    // Adjustment speeds by OLS of R0 on the error-correction term R1 b.
    const double bSb = fit.b.dot(S11 * fit.b);
    fit.a = S01 * fit.b / bSb;

    // Short-run coefficients by back-substitution: Z0 - Z1 b a' on Z2.
    const Eigen::MatrixXd Y = Z0 - (Z1 * fit.b) * fit.a.transpose();
    const Eigen::MatrixXd psi = z2solver.solve(Z2.transpose() * Y);  // kz x 2
    fit.short_run.resize(lags);
    for (int j = 1; j <= lags; ++j) {
        fit.short_run[j - 1] = psi.block(2 * (j - 1), 0, 2, 2).transpose();
    }
    const Eigen::Vector2d c = psi.row(kz - 1).transpose();

    // Split the constant into the part inside the relation and the drift.
    fit.c0 = fit.a.dot(c) / fit.a.squaredNorm();
    fit.c1 = c - fit.a * fit.c0;

    fit.residuals = R0 - (R1 * fit.b) * fit.a.transpose();
    return fit;
}

namespace {

RankTestReport build_report(std::string kind, double stat0, double stat1, const double crit[2]) {
    RankTestReport report;
    report.kind = std::move(kind);
    report.hypotheses[0] = {0, stat0, crit[0], stat0 > crit[0]};
    report.hypotheses[1] = {1, stat1, crit[1], stat1 > crit[1]};
    if (!report.hypotheses[0].reject) {
        report.selected_rank = 0;
    } else if (!report.hypotheses[1].reject) {
        report.selected_rank = 1;
    } else {
        report.selected_rank = 2;
    }
    return report;
}

}  // namespace

RankTestReport trace_test(const VecmFit& fit) {
    const double T = fit.n_obs;
    const double stat0 = -T * (std::log1p(-fit.lambda1) + std::log1p(-fit.lambda2));
    const double stat1 = -T * std::log1p(-fit.lambda2);
    return build_report("trace", stat0, stat1, kTrace5pct);
}

RankTestReport max_eigen_test(const VecmFit& fit) {
    const double T = fit.n_obs;
    const double stat0 = -T * std::log1p(-fit.lambda1);
    const double stat1 = -T * std::log1p(-fit.lambda2);
    return build_report("max_eigenvalue", stat0, stat1, kMaxEig5pct);
}

RestrictionTest restriction_test(const VecmFit& fit, const Eigen::Vector2d& b0) {
    if (b0.norm() == 0.0) throw std::invalid_argument("restriction_test: zero vector");

    // Likelihood with the cointegration vector pinned to b0: the eigenproblem
    // collapses to a scalar Rayleigh quotient.
    Eigen::LLT<Eigen::Matrix2d> s00chol(fit.S00);
    if (s00chol.info() != Eigen::Success) throw NumericError("restriction_test: singular S00");
    const Eigen::Vector2d s01b = fit.S01 * b0;
    const double num = s01b.dot(s00chol.solve(s01b));
    const double den = b0.dot(fit.S11 * b0);
    const double lambda_r = num / den;

    RestrictionTest out;
    out.restricted_lambda = lambda_r;
    out.statistic = fit.n_obs * (std::log1p(-lambda_r) - std::log1p(-fit.lambda1));
    out.statistic = std::max(out.statistic, 0.0);
    out.df = 1;
    out.reject_5pct = out.statistic > out.crit_5pct;
    out.reject_1pct = out.statistic > out.crit_1pct;
    return out;
}

}  // namespace dpr::johansen
