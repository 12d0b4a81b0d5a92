#include "dpr/ratios.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpr/adl.hpp"
#include "dpr/errors.hpp"
#include "dpr/johansen.hpp"

namespace dpr {

RatioPanel build_ratios(const AnnualPanel& panel, double beta_mdp, double beta_mdp_prime,
                        BetaProvenance provenance) {
    if (!std::isfinite(beta_mdp) || !std::isfinite(beta_mdp_prime)) {
        throw std::invalid_argument("build_ratios: beta must be finite");
    }
    RatioPanel out;
    out.dp = panel.d - panel.p;
    out.dstar_p = panel.dstar - panel.p;
    out.mdp = panel.d - beta_mdp * panel.p;
    out.mdp_prime = panel.d - beta_mdp_prime * panel.p;
    out.beta_mdp = beta_mdp;
    out.beta_mdp_prime = beta_mdp_prime;
    out.provenance = provenance;
    return out;
}

double BetaPath::at_row(Eigen::Index t) const {
    if (t < first_row || t >= first_row + beta.size()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return beta(t - first_row);
}

BetaPath recursive_beta_path(const AnnualPanel& panel, int min_years, BetaEngine engine,
                             int johansen_lags) {
    if (min_years < 2) throw std::invalid_argument("recursive_beta_path: min_years too small");
    // Panel row i covers series months 0..i+11, so the first row backed by
    // min_years of raw data is 12*min_years - 12.
    const Eigen::Index first = static_cast<Eigen::Index>(12) * min_years - 12;
    if (first >= panel.rows()) {
        throw std::invalid_argument("recursive_beta_path: burn-in exceeds sample");
    }

    BetaPath path;
    path.first_row = first;
    path.engine = engine;
    path.min_years = min_years;
    const Eigen::Index n = panel.rows() - first;
    path.beta.setConstant(n, std::numeric_limits<double>::quiet_NaN());
    path.carried_forward.assign(n, 0);

    double last = std::numeric_limits<double>::quiet_NaN();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index t = first + i;
        double estimate = std::numeric_limits<double>::quiet_NaN();
        try {
            if (engine == BetaEngine::johansen) {
                Eigen::MatrixXd w(t + 1, 2);
                w.col(0) = panel.d.head(t + 1);
                w.col(1) = panel.p.head(t + 1);
                estimate = johansen::vecm_fit(w, johansen_lags).beta;
            } else {
                const adl::AdlFit fit =
                    adl::adl_fit(panel.d.head(t + 1), panel.p.head(t + 1));
                estimate = adl::long_run_solution(fit).beta;
            }
            if (!std::isfinite(estimate)) throw NumericError("non-finite beta");
        } catch (const std::exception&) {
            estimate = std::numeric_limits<double>::quiet_NaN();
        }
        if (std::isfinite(estimate)) {
            path.beta(i) = estimate;
            last = estimate;
        } else {
            path.beta(i) = last;  // NaN gap until the first success
            path.carried_forward[i] = 1;
        }
    }
    return path;
}

}  // namespace dpr
