#include "dpr/oos_eval.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpr/errors.hpp"

namespace dpr::oos {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double simple_slope_forecast(const Eigen::VectorXd& z, const Eigen::VectorXd& y,
                             Eigen::Index n_train, double z_now) {
    // Univariate OLS on the realized pairs; closed form keeps the walk cheap.
    const auto zh = z.head(n_train);
    const auto yh = y.head(n_train);
    const double zm = zh.mean();
    const double ym = yh.mean();
    const double szz = (zh.array() - zm).matrix().squaredNorm();
    if (szz <= 0.0) throw NumericError("oos: constant predictor in training window");
    const double szy = ((zh.array() - zm) * (yh.array() - ym)).sum();
    const double slope = szy / szz;
    return ym + slope * (z_now - zm);
}

}  // namespace

double r2_out_of_sample(const std::vector<ForecastRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("r2_out_of_sample: no forecasts");
    double sse_model = 0.0, sse_bench = 0.0;
    for (const ForecastRow& row : rows) {
        sse_model += (row.realized - row.forecast) * (row.realized - row.forecast);
        sse_bench += (row.realized - row.benchmark) * (row.realized - row.benchmark);
    }
    if (sse_model == 0.0 && sse_bench == 0.0) return 0.0;
    if (sse_bench <= 0.0) throw NumericError("r2_out_of_sample: degenerate benchmark errors");
    return 1.0 - sse_model / sse_bench;
}

OosReport evaluate(const OosScheme& scheme, const AnnualPanel& full_panel,
                   const BetaPath* recursive_path, std::optional<double> population_beta) {
    using predict::Predictor;
    using predict::Target;

    if (scheme.target != Target::r && scheme.target != Target::re) {
        throw std::invalid_argument("oos::evaluate: target must be r or re");
    }
    if (scheme.horizon < 1) throw std::invalid_argument("oos::evaluate: horizon must be >= 1");
    const bool classical =
        scheme.predictor == Predictor::dp || scheme.predictor == Predictor::dstar_p;
    if (classical != (scheme.beta_mode == BetaMode::none)) {
        throw std::invalid_argument(
            "oos::evaluate: beta mode none if and only if the predictor is classical");
    }
    if (scheme.beta_mode == BetaMode::population && !population_beta) {
        throw std::invalid_argument("oos::evaluate: population mode needs a beta");
    }

    // Restrict to the sample the evaluator is allowed to see.
    AnnualPanel panel = full_panel;
    if (scheme.sample_start) {
        const long from = full_panel.index_of(*scheme.sample_start);
        if (from < 0) throw std::invalid_argument("oos::evaluate: sample start outside panel");
        panel = full_panel.slice(from, full_panel.rows() - 1);
    }

    const Eigen::Index h12 = static_cast<Eigen::Index>(12) * scheme.horizon;
    const Eigen::Index first_eval = static_cast<Eigen::Index>(12) * scheme.init_years - 12;
    Eigen::Index last_eval = panel.rows() - 1 - h12;
    if (scheme.eval_end) {
        const long cap = panel.index_of(*scheme.eval_end);
        if (cap < 0) throw std::invalid_argument("oos::evaluate: eval_end outside panel");
        last_eval = std::min<Eigen::Index>(last_eval, cap);
    }
    if (first_eval > last_eval) {
        throw DataError("oos::evaluate: sample too short for the init window plus horizon");
    }

    BetaPath local_path;
    const BetaPath* path = recursive_path;
    if (scheme.beta_mode == BetaMode::recursive && path == nullptr) {
        local_path = recursive_beta_path(panel, scheme.init_years, scheme.engine,
                                         scheme.johansen_lags);
        path = &local_path;
    }

    // Realized h-year targets, indexed by forecast origin.
    const Eigen::VectorXd& base =
        scheme.target == Target::r ? panel.r : panel.re;
    Eigen::VectorXd realized(last_eval + 1);
    for (Eigen::Index t = 0; t <= last_eval; ++t) {
        realized(t) = horizon_aggregate(panel, base, t, scheme.horizon, std::nullopt);
    }

    OosReport report;
    report.scheme = scheme;

    Eigen::VectorXd z(panel.rows());
    for (Eigen::Index t = first_eval; t <= last_eval; ++t) {
        // Predictor series as knowable at t.
        double beta_used = kNan;
        switch (scheme.beta_mode) {
            case BetaMode::none:
                z = scheme.predictor == Predictor::dp ? (panel.d - panel.p).eval()
                                                      : (panel.dstar - panel.p).eval();
                break;
            case BetaMode::population:
                beta_used = *population_beta;
                z = panel.d - beta_used * panel.p;
                break;
            case BetaMode::recursive:
                beta_used = path->at_row(t);
                if (!std::isfinite(beta_used)) continue;  // burn-in gap
                z = panel.d - beta_used * panel.p;
                break;
        }

        // Training pairs: origins whose h-year outcome is realized by t.
        const Eigen::Index n_train = t - h12 + 1;
        if (n_train < 24) continue;

        const double forecast = simple_slope_forecast(z, realized, n_train, z(t));
        const double benchmark = realized.head(n_train).mean();
        report.rows.push_back({panel.date[t], forecast, benchmark, realized(t), beta_used});
    }

    if (report.rows.empty()) throw DataError("oos::evaluate: no completed forecasts");
    report.n_forecasts = static_cast<int>(report.rows.size());
    report.r2_os = r2_out_of_sample(report.rows);
    return report;
}

}  // namespace dpr::oos
