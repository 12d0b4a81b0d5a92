#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dpr/johansen.hpp"
#include "dpr/ratios.hpp"
#include "dpr/selftest.hpp"
#include "dpr/series_store.hpp"
#include "dpr/stats_core.hpp"

using namespace dpr;

namespace {

AnnualPanel market_panel(std::uint64_t seed, int months) {
    return build_annual_panel(selftest::simulate_market(seed, months));
}

}  // namespace

TEST_CASE("build_ratios identities") {
    const AnnualPanel panel = market_panel(111, 400);
    const RatioPanel at_one = build_ratios(panel, 1.0, 1.0);
    CHECK((at_one.mdp - at_one.dp).cwiseAbs().maxCoeff() == 0.0);  // beta = 1 collapses to dp

    const double beta = 0.8017;
    const RatioPanel ratios = build_ratios(panel, beta, 0.8548);
    for (Eigen::Index t = 0; t < panel.rows(); t += 37) {
        CHECK(ratios.mdp(t) == panel.d(t) - beta * panel.p(t));  // exact arithmetic
        const double decomposition = ratios.dp(t) - ratios.mdp(t) - (beta - 1.0) * panel.p(t);
        CHECK(std::abs(decomposition) < 1e-12);
    }
    CHECK(ratios.beta_mdp == beta);
    CHECK(ratios.provenance == BetaProvenance::population);

    CHECK_THROWS_AS(build_ratios(panel, std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("modified ratio is less persistent than the classical ratio") {
    const AnnualPanel panel = market_panel(113, 1044);
    Eigen::MatrixXd w(panel.rows(), 2);
    w.col(0) = panel.d;
    w.col(1) = panel.p;
    const double beta = johansen::vecm_fit(w, 2).beta;
    const RatioPanel ratios = build_ratios(panel, beta, beta);

    std::vector<double> dp, mdp;
    for (Eigen::Index t : panel.december_rows()) {
        dp.push_back(ratios.dp(t));
        mdp.push_back(ratios.mdp(t));
    }
    CHECK(stats::ar1(mdp).phi < stats::ar1(dp).phi);
}

TEST_CASE("recursive_beta_path tracks a stable relation") {
    // Tight cointegration: beta_t should sit near 0.5 through the sample.
    selftest::Rng rng(127);
    MonthlySeries series;
    double logp = std::log(50.0);
    double prev_price = 50.0;
    for (int t = 0; t < 480; ++t) {
        logp += 0.003 + 0.02 * rng.normal();
        const double price = std::exp(logp);
        const double d12 = std::exp(0.5 * logp - 1.0 + 0.001 * rng.normal());
        MonthlyRecord rec;
        rec.date = YearMonth(1950, 1).plus_months(t);
        rec.price_level = price;
        rec.exdiv_return = price / prev_price;
        rec.total_return = rec.exdiv_return * (1.0 + d12 / 12.0 / price);
        rec.risk_free = 1.001;
        series.records.push_back(rec);
        prev_price = price;
    }
    const AnnualPanel panel = build_annual_panel(series);
    const BetaPath path = recursive_beta_path(panel, 15, BetaEngine::johansen, 2);

    CHECK(path.first_row == 12 * 15 - 12);
    for (Eigen::Index i = 0; i < path.size(); i += 25) {
        if (!std::isfinite(path.beta(i))) continue;
        CHECK(path.beta(i) == doctest::Approx(0.5).epsilon(0.05));
    }

    // Endpoint equals the full-sample estimate by construction.
    Eigen::MatrixXd w(panel.rows(), 2);
    w.col(0) = panel.d;
    w.col(1) = panel.p;
    CHECK(path.beta(path.size() - 1) == johansen::vecm_fit(w, 2).beta);
}

TEST_CASE("recursive_beta_path with the adl engine") {
    const AnnualPanel panel = market_panel(131, 600);
    const BetaPath path = recursive_beta_path(panel, 15, BetaEngine::adl);
    CHECK(path.engine == BetaEngine::adl);
    CHECK(path.size() == panel.rows() - path.first_row);
    int finite = 0;
    for (Eigen::Index i = 0; i < path.size(); ++i) {
        if (std::isfinite(path.beta(i))) ++finite;
    }
    CHECK(finite > path.size() / 2);
}

TEST_CASE("recursive_beta_path burn-in must fit the sample") {
    const AnnualPanel panel = market_panel(137, 200);
    CHECK_THROWS_AS(recursive_beta_path(panel, 40, BetaEngine::johansen),
                    std::invalid_argument);
}
