#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpr/series_store.hpp"

namespace dpr::selftest {

/// Deterministic normal/uniform source; Box-Muller on top of mt19937_64 so a
/// seed pins the whole stream independent of library internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    double uniform();  ///< [0, 1)
    double normal();   ///< standard normal

private:
    std::uint64_t next();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Pure random walk with the given innovation scale.
std::vector<double> simulate_random_walk(Rng& rng, int n, double sigma = 1.0);

/// Stationary AR(1) around zero.
std::vector<double> simulate_ar1(Rng& rng, int n, double phi, double sigma = 1.0);

/// Cointegrated pair: p a random walk, d = beta p + stationary AR(1) error.
struct CointegratedPair {
    Eigen::MatrixXd w;  ///< n x 2, columns (d, p)
};
CointegratedPair simulate_cointegrated_pair(Rng& rng, int n, double beta, double error_phi = 0.9,
                                            double error_sigma = 0.1, double walk_sigma = 1.0);

/// Small synthetic market with a cointegrated dividend-price system and
/// return predictability, for the data-independent property suites.
MonthlySeries simulate_market(std::uint64_t seed, int n_months);

struct SuiteResult {
    std::string name;
    bool pass = false;
    double statistic = 0.0;  ///< the quantity checked
    std::string detail;      ///< human-readable bound/statistic summary
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool all_pass = false;
};

/// Runs every Monte Carlo property suite with the given seed. Deterministic:
/// the same seed yields an identical report.
Report run(std::uint64_t seed);

}  // namespace dpr::selftest
