#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dpr/series_store.hpp"

namespace dpr {

enum class BetaProvenance { population, recursive, fixed };

/// Panel-aligned dividend-price ratio series.
struct RatioPanel {
    Eigen::VectorXd dp;         ///< d - p
    Eigen::VectorXd dstar_p;    ///< dstar - p
    Eigen::VectorXd mdp;        ///< d - beta_mdp * p
    Eigen::VectorXd mdp_prime;  ///< d - beta_mdp_prime * p
    double beta_mdp = 1.0;
    double beta_mdp_prime = 1.0;
    BetaProvenance provenance = BetaProvenance::fixed;
};

RatioPanel build_ratios(const AnnualPanel& panel, double beta_mdp, double beta_mdp_prime,
                        BetaProvenance provenance = BetaProvenance::population);

enum class BetaEngine { johansen, adl };

/// Recursive cointegration-coefficient estimates: beta at panel row t uses
/// only panel rows 0..t. Estimation failures carry the previous value forward
/// and are flagged.
struct BetaPath {
    Eigen::Index first_row = 0;           ///< first panel row with an estimate
    Eigen::VectorXd beta;                 ///< aligned with panel rows >= first_row
    std::vector<std::uint8_t> carried_forward;
    BetaEngine engine = BetaEngine::johansen;
    int min_years = 15;

    [[nodiscard]] Eigen::Index size() const { return beta.size(); }
    /// Beta available at panel row t, NaN before the burn-in.
    [[nodiscard]] double at_row(Eigen::Index t) const;
};

BetaPath recursive_beta_path(const AnnualPanel& panel, int min_years, BetaEngine engine,
                             int johansen_lags = 6);

}  // namespace dpr
