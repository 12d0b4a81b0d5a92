#include "dpr/tables.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dpr/errors.hpp"

namespace dpr::tables {

namespace {

std::string fmt(double v, int decimals) {
    if (!std::isfinite(v)) return "";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

std::string fmt2(double v) { return fmt(v, 2); }
std::string fmt4(double v) { return fmt(v, 4); }

std::vector<Eigen::Index> sample_rows(const AnnualPanel& panel, predict::Sampling sampling,
                                      std::optional<YearMonth> start) {
    std::vector<Eigen::Index> rows;
    Eigen::Index from = 0;
    if (start) {
        const long ix = panel.index_of(*start);
        from = ix >= 0 ? ix : 0;
    }
    for (Eigen::Index t = from; t < panel.rows(); ++t) {
        if (sampling == predict::Sampling::annual_december && !panel.date[t].is_december()) {
            continue;
        }
        rows.push_back(t);
    }
    return rows;
}

std::vector<double> take(const Eigen::VectorXd& series, const std::vector<Eigen::Index>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (Eigen::Index t : rows) out.push_back(series(t));
    return out;
}

std::string panel_name(Panel p) { return p == Panel::A ? "A" : "B"; }

std::optional<YearMonth> panel_start(const RunConfig& config, Panel panel) {
    if (panel == Panel::B) return config.panel_b_start;
    return std::nullopt;
}

constexpr const char* kPanelACaption = "full sample";
constexpr const char* kPanelBCaption = "subsample";

}  // namespace

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("data", data_path.string());
    out.emplace_back("schema", schema.date + "," + schema.total_return + "," +
                                   schema.exdiv_return + "," + schema.price + "," +
                                   schema.risk_free);
    out.emplace_back("rho", fmt4(rho));
    out.emplace_back("hac_kernel", stats::kernel_name(kernel));
    out.emplace_back("hac_lag_rule",
                     hac_lag ? std::to_string(*hac_lag) : std::string("12h-1/h-1"));
    out.emplace_back("annual_sampling", predict::sampling_name(annual_sampling));
    out.emplace_back("panel_b_start", panel_b_start.str());
    out.emplace_back("oos_init_years", std::to_string(oos_init_years));
    out.emplace_back("max_var_lag", std::to_string(max_var_lag));
    out.emplace_back("seed", std::to_string(seed));
    return out;
}

Analysis analyze(const RunConfig& config) {
    return analyze(load_monthly_csv(config.data_path, config.schema), config);
}

Analysis analyze(MonthlySeries series, const RunConfig& config) {
    Analysis a;
    a.series = std::move(series);
    a.panel = build_annual_panel(a.series);

    Eigen::MatrixXd w(a.panel.rows(), 2);
    w.col(0) = a.panel.d;
    w.col(1) = a.panel.p;
    a.var_lag = stats::select_var_lag(w, config.max_var_lag);
    const int q = std::max(1, a.var_lag - 1);
    a.vecm = johansen::vecm_fit(w, q);

    a.adl_model = adl::adl_fit(a.panel.d, a.panel.p);
    a.adl_lr = adl::long_run_solution(a.adl_model);

    a.ratios = build_ratios(a.panel, a.vecm.beta, a.adl_lr.beta, BetaProvenance::population);
    a.beta_path = recursive_beta_path(a.panel, config.oos_init_years, BetaEngine::johansen, q);
    return a;
}

namespace {

std::vector<std::pair<std::string, std::string>> base_meta(const Analysis& a,
                                                           const RunConfig& config) {
    auto meta = config.echo();
    meta.emplace_back("span",
                      a.series.first_month().str() + ".." + a.series.last_month().str());
    meta.emplace_back("price_provenance", a.series.price_provenance);
    meta.emplace_back("var_lag_hq", std::to_string(a.var_lag));
    meta.emplace_back("vecm_lags", std::to_string(a.vecm.lags));
    meta.emplace_back("beta_johansen", fmt(a.vecm.beta, 6));
    meta.emplace_back("beta_adl", fmt(a.adl_lr.beta, 6));
    return meta;
}

}  // namespace

TableDoc table_1a(const Analysis& a, const RunConfig& config) {
    const auto rows = sample_rows(a.panel, config.annual_sampling, std::nullopt);

    struct Entry {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Entry> entries = {
        {"r", take(a.panel.r, rows)},       {"re", take(a.panel.re, rows)},
        {"rf", take(a.panel.rf, rows)},     {"dp", take(a.ratios.dp, rows)},
        {"d*p", take(a.ratios.dstar_p, rows)}, {"mdp", take(a.ratios.mdp, rows)},
        {"mdp'", take(a.ratios.mdp_prime, rows)},
    };

    TableDoc doc;
    doc.id = "1a";
    doc.title = "Summary statistics";
    doc.header = {"series"};
    for (const Entry& e : entries) doc.header.push_back("corr_" + e.name);
    doc.header.insert(doc.header.end(), {"mean", "std", "ar1"});

    for (size_t i = 0; i < entries.size(); ++i) {
        std::vector<std::string> row{entries[i].name};
        for (size_t j = 0; j < entries.size(); ++j) {
            row.push_back(j <= i ? fmt2(stats::correlation(entries[i].values, entries[j].values))
                                 : "");
        }
        const double m = stats::mean(entries[i].values);
        const double s = stats::stddev(entries[i].values);
        const double phi = stats::ar1(entries[i].values).phi;
        row.push_back(fmt2(m));
        row.push_back(fmt2(s));
        row.push_back(fmt2(phi));
        doc.rows.push_back(row);

        doc.values[entries[i].name] = {{"mean", m}, {"std", s}, {"ar1", phi}};
        for (size_t j = 0; j < entries.size(); ++j) {
            doc.values["corr"][entries[i].name + "|" + entries[j].name] =
                stats::correlation(entries[i].values, entries[j].values);
        }
    }

    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("sampling", predict::sampling_name(config.annual_sampling));
    doc.meta.emplace_back("n_obs", std::to_string(rows.size()));
    return doc;
}

TableDoc table_1b(const Analysis& a, const RunConfig& config) {
    const auto trace = johansen::trace_test(a.vecm);
    const auto maxeig = johansen::max_eigen_test(a.vecm);
    const auto restriction = johansen::restriction_test(a.vecm, Eigen::Vector2d(1.0, -1.0));

    TableDoc doc;
    doc.id = "1b";
    doc.title = "Cointegration tests and the [1,-1] restriction";
    doc.header = {"hypothesis", "statistic", "5pct_critical", "decision"};
    auto decision = [](bool reject) { return reject ? std::string("reject") : std::string("accept"); };
    doc.rows.push_back({"trace r=0", fmt2(trace.hypotheses[0].statistic),
                        fmt2(trace.hypotheses[0].critical_5pct),
                        decision(trace.hypotheses[0].reject)});
    doc.rows.push_back({"trace r<=1", fmt2(trace.hypotheses[1].statistic),
                        fmt2(trace.hypotheses[1].critical_5pct),
                        decision(trace.hypotheses[1].reject)});
    doc.rows.push_back({"max-eig r=0", fmt2(maxeig.hypotheses[0].statistic),
                        fmt2(maxeig.hypotheses[0].critical_5pct),
                        decision(maxeig.hypotheses[0].reject)});
    doc.rows.push_back({"max-eig r<=1", fmt2(maxeig.hypotheses[1].statistic),
                        fmt2(maxeig.hypotheses[1].critical_5pct),
                        decision(maxeig.hypotheses[1].reject)});
    doc.rows.push_back({"H0 [1,-1] chi2", fmt2(restriction.statistic), fmt2(restriction.crit_5pct),
                        restriction.reject_1pct   ? "reject at 1%"
                        : restriction.reject_5pct ? "reject at 5%"
                                                  : "accept"});

    doc.values["trace_r0"] = trace.hypotheses[0].statistic;
    doc.values["trace_r1"] = trace.hypotheses[1].statistic;
    doc.values["max_eig_r0"] = maxeig.hypotheses[0].statistic;
    doc.values["chi2_restriction"] = restriction.statistic;
    doc.values["selected_rank"] = trace.selected_rank;
    doc.values["lambda1"] = a.vecm.lambda1;
    doc.values["lambda2"] = a.vecm.lambda2;
    doc.values["beta"] = a.vecm.beta;
    doc.values["n_obs"] = a.vecm.n_obs;

    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("sampling", "overlapping_monthly");
    return doc;
}

namespace {

TableDoc univariate_table(const Analysis& a, const RunConfig& config, Panel panel,
                          const std::string& id, const std::string& title,
                          const std::vector<predict::Target>& targets,
                          const std::vector<int>& horizons,
                          const std::vector<predict::Predictor>& predictors) {
    TableDoc doc;
    doc.id = id;
    doc.title = title + " (panel " + panel_name(panel) + ", " +
                (panel == Panel::A ? kPanelACaption : kPanelBCaption) + ")";
    doc.header = {"target", "predictor", "b", "t(b)", "R2", "n"};

    for (predict::Target target : targets) {
        for (int h : horizons) {
            for (predict::Predictor pred : predictors) {
                predict::RegressionSpec spec;
                spec.target = target;
                spec.horizon = h;
                spec.predictors = {pred};
                spec.start = panel_start(config, panel);
                spec.sampling = predict::Sampling::overlapping_monthly;
                spec.kernel = config.kernel;
                spec.hac_lag = config.hac_lag;
                const auto res = predict::run_regression(spec, a.panel, a.ratios);

                const std::string label =
                    predict::target_name(target) + "(" + std::to_string(h) + ")";
                doc.rows.push_back({label, predict::predictor_name(pred),
                                    fmt2(res.slopes[0].slope), fmt2(res.slopes[0].t_stat),
                                    fmt2(res.r_squared), std::to_string(res.n_obs)});
                const std::string key = label + "|" + predict::predictor_name(pred);
                doc.values[key] = {{"b", res.slopes[0].slope},
                                   {"t", res.slopes[0].t_stat},
                                   {"r2", res.r_squared},
                                   {"n", res.n_obs},
                                   {"hac_lag", res.hac_lag},
                                   {"hac_fallback", res.hac_fallback}};
            }
        }
    }
    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("panel", panel_name(panel));
    doc.meta.emplace_back("sampling", "overlapping_monthly");
    return doc;
}

}  // namespace

TableDoc table_2a(const Analysis& a, const RunConfig& config, Panel panel) {
    return univariate_table(a, config, panel, "2a",
                            "Predictability of returns, equity premia and dividend growth",
                            {predict::Target::r, predict::Target::re, predict::Target::dd},
                            {1, 3, 5, 7},
                            {predict::Predictor::dstar_p, predict::Predictor::dp,
                             predict::Predictor::mdp, predict::Predictor::mdp_prime});
}

TableDoc table_2b(const Analysis& a, const RunConfig& config, Panel panel) {
    return univariate_table(a, config, panel, "2b", "Univariate forecasting of risk-free rates",
                            {predict::Target::rf}, {1, 3, 5, 7},
                            {predict::Predictor::dstar_p, predict::Predictor::mdp});
}

TableDoc table_2c(const Analysis& a, const RunConfig& config, Panel panel) {
    TableDoc doc;
    doc.id = "2c";
    doc.title = std::string("Multivariate predictability of realized returns (panel ") +
                panel_name(panel) + ")";
    doc.header = {"target", "b(dp)", "t(dp)", "c(mdp)", "t(mdp)", "R2", "n"};

    for (predict::Target target : {predict::Target::r, predict::Target::re}) {
        for (int h : {3, 5, 7}) {
            predict::RegressionSpec spec;
            spec.target = target;
            spec.horizon = h;
            spec.predictors = {predict::Predictor::dp, predict::Predictor::mdp};
            spec.start = panel_start(config, panel);
            spec.sampling = predict::Sampling::overlapping_monthly;
            spec.kernel = config.kernel;
            spec.hac_lag = config.hac_lag;
            const auto res = predict::run_regression(spec, a.panel, a.ratios);

            const std::string label = predict::target_name(target) + "(" + std::to_string(h) + ")";
            doc.rows.push_back({label, fmt2(res.slopes[0].slope), fmt2(res.slopes[0].t_stat),
                                fmt2(res.slopes[1].slope), fmt2(res.slopes[1].t_stat),
                                fmt2(res.r_squared), std::to_string(res.n_obs)});
            doc.values[label] = {{"b_dp", res.slopes[0].slope},
                                 {"t_dp", res.slopes[0].t_stat},
                                 {"c_mdp", res.slopes[1].slope},
                                 {"t_mdp", res.slopes[1].t_stat},
                                 {"r2", res.r_squared},
                                 {"n", res.n_obs}};
        }
    }
    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("panel", panel_name(panel));
    doc.meta.emplace_back("sampling", "overlapping_monthly");
    return doc;
}

TableDoc table_3(const Analysis& a, const RunConfig& config, Panel panel) {
    TableDoc doc;
    doc.id = "3";
    doc.title = std::string("Weighted CS regressions: variability of the d*p ratio (panel ") +
                panel_name(panel) + ")";
    doc.header = {"target", "b", "t(b)", "R2", "n"};

    for (int h : {5, 7}) {
        const auto decomp = predict::cs_decomposition(
            a.panel, a.ratios, h, config.rho, {predict::Predictor::dstar_p},
            panel_start(config, panel), config.annual_sampling, config.kernel);
        const std::string hs = std::to_string(h);
        auto add = [&](const std::string& label, const predict::RegressionResult& res) {
            doc.rows.push_back({label, fmt2(res.slopes[0].slope), fmt2(res.slopes[0].t_stat),
                                fmt2(res.r_squared), std::to_string(res.n_obs)});
            doc.values[label] = {{"b", res.slopes[0].slope},
                                 {"t", res.slopes[0].t_stat},
                                 {"r2", res.r_squared},
                                 {"n", res.n_obs}};
        };
        add("wr(" + hs + ")", decomp.returns);
        add("wg(" + hs + ")", decomp.growth);
        add("auto(" + hs + ")", decomp.auto_term);
        doc.rows.push_back({"slope_sum(" + hs + ")", fmt2(decomp.slope_sum[0]), "", "", ""});
        doc.values["slope_sum(" + hs + ")"] = decomp.slope_sum[0];
    }
    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("panel", panel_name(panel));
    doc.meta.emplace_back("sampling", predict::sampling_name(config.annual_sampling));
    doc.meta.emplace_back("rho", fmt4(config.rho));
    return doc;
}

namespace {

TableDoc cs_multivariate_table(const Analysis& a, const RunConfig& config, Panel panel,
                               const std::string& id, const std::string& title, bool breakdown) {
    TableDoc doc;
    doc.id = id;
    doc.title = title + " (panel " + panel_name(panel) + ")";
    doc.header = {"target", "predictor", "slope", "t", "R2", "n"};

    const std::vector<std::vector<predict::Predictor>> sets = {
        {predict::Predictor::dstar_p, predict::Predictor::mdp},
        {predict::Predictor::dstar_p, predict::Predictor::mdp_prime},
    };
    for (int h : {5, 7}) {
        const std::string hs = std::to_string(h);
        for (const auto& set : sets) {
            const std::string set_name = predict::predictor_name(set[1]);
            auto add = [&](const std::string& target_label,
                           const predict::RegressionResult& res) {
                for (size_t j = 0; j < set.size(); ++j) {
                    doc.rows.push_back({target_label, predict::predictor_name(set[j]),
                                        fmt2(res.slopes[j].slope), fmt2(res.slopes[j].t_stat),
                                        j == 0 ? fmt2(res.r_squared) : "",
                                        j == 0 ? std::to_string(res.n_obs) : ""});
                    doc.values[target_label + "|" + set_name + "|" +
                               predict::predictor_name(set[j])] = {
                        {"slope", res.slopes[j].slope},
                        {"t", res.slopes[j].t_stat},
                        {"r2", res.r_squared},
                        {"n", res.n_obs}};
                }
            };
            if (!breakdown) {
                const auto decomp = predict::cs_decomposition(
                    a.panel, a.ratios, h, config.rho, set, panel_start(config, panel),
                    config.annual_sampling, config.kernel);
                add("wr(" + hs + ")", decomp.returns);
                add("wg(" + hs + ")", decomp.growth);
                add("auto(" + hs + ")", decomp.auto_term);
                for (size_t j = 0; j < set.size(); ++j) {
                    const std::string key = "slope_sum(" + hs + ")|" + set_name + "|" +
                                            predict::predictor_name(set[j]);
                    doc.rows.push_back({"slope_sum(" + hs + ")", predict::predictor_name(set[j]),
                                        fmt2(decomp.slope_sum[j]), "", "", ""});
                    doc.values[key] = decomp.slope_sum[j];
                }
            } else {
                const auto parts = predict::cs_breakdown(
                    a.panel, a.ratios, h, config.rho, set, panel_start(config, panel),
                    config.annual_sampling, config.kernel);
                add("wre(" + hs + ")", parts.premium);
                add("wrf(" + hs + ")", parts.risk_free);
            }
        }
    }
    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("panel", panel_name(panel));
    doc.meta.emplace_back("sampling", predict::sampling_name(config.annual_sampling));
    doc.meta.emplace_back("rho", fmt4(config.rho));
    return doc;
}

}  // namespace

TableDoc table_4(const Analysis& a, const RunConfig& config, Panel panel) {
    return cs_multivariate_table(a, config, panel, "4",
                                 "Multivariate CS analysis: d*p with the modified ratios", false);
}

TableDoc table_4b(const Analysis& a, const RunConfig& config, Panel panel) {
    return cs_multivariate_table(a, config, panel, "4b",
                                 "Multivariate CS slope breakdown: premia and risk-free", true);
}

TableDoc table_5(const Analysis& a, const RunConfig& config, Panel panel) {
    TableDoc doc;
    doc.id = "5";
    doc.title = std::string("Out-of-sample R2 against the historical mean (panel ") +
                panel_name(panel) + ")";
    doc.header = {"predictor", "r(3)", "r(5)", "r(7)", "re(3)", "re(5)", "re(7)"};

    // Population fits and the recursive path for the sample the panel sees.
    double beta_pop = a.ratios.beta_mdp;
    double beta_pop_adl = a.ratios.beta_mdp_prime;
    const BetaPath* path = &a.beta_path;
    BetaPath local_path;
    std::optional<YearMonth> start;
    if (panel == Panel::B) {
        start = config.panel_b_start;
        const long from = a.panel.index_of(config.panel_b_start);
        if (from < 0) throw DataError("table_5: panel B start outside the sample");
        const AnnualPanel sub = a.panel.slice(from, a.panel.rows() - 1);
        Eigen::MatrixXd w(sub.rows(), 2);
        w.col(0) = sub.d;
        w.col(1) = sub.p;
        beta_pop = johansen::vecm_fit(w, a.vecm.lags).beta;
        beta_pop_adl = adl::long_run_solution(adl::adl_fit(sub.d, sub.p)).beta;
        local_path = recursive_beta_path(sub, config.oos_init_years, BetaEngine::johansen,
                                         a.vecm.lags);
        path = &local_path;
    }

    struct RowSpec {
        std::string label;
        predict::Predictor predictor;
        oos::BetaMode mode;
        BetaEngine engine;
    };
    const std::vector<RowSpec> row_specs = {
        {"dp", predict::Predictor::dp, oos::BetaMode::none, BetaEngine::johansen},
        {"d*p", predict::Predictor::dstar_p, oos::BetaMode::none, BetaEngine::johansen},
        {"mdp(P)", predict::Predictor::mdp, oos::BetaMode::population, BetaEngine::johansen},
        {"mdp'(P)", predict::Predictor::mdp_prime, oos::BetaMode::population, BetaEngine::adl},
        {"mdp(R)", predict::Predictor::mdp, oos::BetaMode::recursive, BetaEngine::johansen},
    };

    for (const RowSpec& rs : row_specs) {
        std::vector<std::string> row{rs.label};
        for (predict::Target target : {predict::Target::r, predict::Target::re}) {
            for (int h : {3, 5, 7}) {
                oos::OosScheme scheme;
                scheme.predictor = rs.predictor;
                scheme.beta_mode = rs.mode;
                scheme.target = target;
                scheme.horizon = h;
                scheme.sample_start = start;
                scheme.init_years = config.oos_init_years;
                scheme.engine = rs.engine;
                scheme.johansen_lags = a.vecm.lags;
                std::optional<double> pop;
                if (rs.mode == oos::BetaMode::population) {
                    pop = rs.engine == BetaEngine::adl ? beta_pop_adl : beta_pop;
                }
                const BetaPath* use_path =
                    rs.mode == oos::BetaMode::recursive ? path : nullptr;
                const auto report = oos::evaluate(scheme, a.panel, use_path, pop);
                row.push_back(fmt2(report.r2_os));
                const std::string key = predict::target_name(target) + "(" + std::to_string(h) +
                                        ")|" + rs.label;
                doc.values[key] = {{"r2_os", report.r2_os}, {"n", report.n_forecasts}};
            }
        }
        doc.rows.push_back(row);
    }

    doc.meta = base_meta(a, config);
    doc.meta.emplace_back("panel", panel_name(panel));
    doc.meta.emplace_back("beta_population", fmt(beta_pop, 6));
    doc.meta.emplace_back("beta_population_adl", fmt(beta_pop_adl, 6));
    doc.meta.emplace_back("forecast_grid", "monthly, overlapping");
    return doc;
}

TableDoc figure_1(const Analysis& a, const RunConfig& config) {
    TableDoc doc;
    doc.id = "figure1";
    doc.title = "dp and mdp against forward-looking 5-year returns";
    doc.header = {"date", "dp", "mdp", "r5_forward"};
    const Eigen::Index h12 = 60;
    for (Eigen::Index t = 0; t + h12 < a.panel.rows(); ++t) {
        const double r5 = horizon_aggregate(a.panel, a.panel.r, t, 5, std::nullopt);
        doc.rows.push_back({a.panel.date[t].str(), fmt(a.ratios.dp(t), 6),
                            fmt(a.ratios.mdp(t), 6), fmt(r5, 6)});
    }
    doc.values["rows"] = static_cast<int>(doc.rows.size());
    doc.meta = base_meta(a, config);
    return doc;
}

TableDoc figure_2(const Analysis& a, const RunConfig& config) {
    TableDoc doc;
    doc.id = "figure2";
    doc.title = "Recursive cointegration coefficient against its full-sample value";
    doc.header = {"date", "beta_recursive", "beta_population", "carried_forward"};
    for (Eigen::Index i = 0; i < a.beta_path.size(); ++i) {
        const Eigen::Index t = a.beta_path.first_row + i;
        doc.rows.push_back({a.panel.date[t].str(), fmt(a.beta_path.beta(i), 6),
                            fmt(a.ratios.beta_mdp, 6),
                            std::to_string(int(a.beta_path.carried_forward[i]))});
    }
    doc.values["rows"] = static_cast<int>(doc.rows.size());
    doc.values["beta_population"] = a.ratios.beta_mdp;
    if (a.beta_path.size() > 0) {
        doc.values["beta_last"] = a.beta_path.beta(a.beta_path.size() - 1);
    }
    doc.meta = base_meta(a, config);
    return doc;
}

std::string render_csv(const TableDoc& doc) {
    std::ostringstream out;
    out << "# table: " << doc.id << "\n# title: " << doc.title << "\n";
    for (const auto& [k, v] : doc.meta) out << "# " << k << ": " << v << "\n";
    for (size_t i = 0; i < doc.header.size(); ++i) {
        out << (i ? "," : "") << doc.header[i];
    }
    out << "\n";
    for (const auto& row : doc.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

std::string render_markdown(const TableDoc& doc) {
    std::ostringstream out;
    out << "## Table " << doc.id << ": " << doc.title << "\n\n";
    for (const auto& [k, v] : doc.meta) out << "- " << k << ": " << v << "\n";
    out << "\n|";
    for (const auto& h : doc.header) out << " " << h << " |";
    out << "\n|";
    for (size_t i = 0; i < doc.header.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& row : doc.rows) {
        out << "|";
        for (const auto& cell : row) out << " " << (cell.empty() ? " " : cell) << " |";
        out << "\n";
    }
    return out.str();
}

const std::vector<std::string>& all_table_ids() {
    static const std::vector<std::string> ids = {"1a", "1b", "2a", "2b", "2c", "3", "4", "4b", "5"};
    return ids;
}

const std::vector<std::string>& all_figure_ids() {
    static const std::vector<std::string> ids = {"1", "2"};
    return ids;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

bool table_has_panels(const std::string& id) { return id != "1a" && id != "1b"; }

TableDoc build_table(const Analysis& a, const RunConfig& config, const std::string& id,
                     Panel panel) {
    if (id == "1a") return table_1a(a, config);
    if (id == "1b") return table_1b(a, config);
    if (id == "2a") return table_2a(a, config, panel);
    if (id == "2b") return table_2b(a, config, panel);
    if (id == "2c") return table_2c(a, config, panel);
    if (id == "3") return table_3(a, config, panel);
    if (id == "4") return table_4(a, config, panel);
    if (id == "4b") return table_4b(a, config, panel);
    if (id == "5") return table_5(a, config, panel);
    throw DataError("unknown table id '" + id + "'");
}

}  // namespace

std::vector<std::filesystem::path> write_tables(const Analysis& a, const RunConfig& config,
                                                const std::vector<std::string>& ids,
                                                const std::vector<Panel>& panels,
                                                const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    nlohmann::json summary;
    for (const auto& [k, v] : config.echo()) summary["config"][k] = v;
    summary["beta_johansen"] = a.vecm.beta;
    summary["beta_adl"] = a.adl_lr.beta;
    summary["var_lag_hq"] = a.var_lag;

    for (const std::string& id : ids) {
        std::vector<Panel> table_panels =
            table_has_panels(id) ? panels : std::vector<Panel>{Panel::A};
        for (Panel panel : table_panels) {
            TableDoc doc;
            try {
                doc = build_table(a, config, id, panel);
            } catch (const NumericError& e) {
                throw NumericError("table " + id + " panel " + panel_name(panel) + ": " +
                                   e.what());
            } catch (const DataError& e) {
                throw DataError("table " + id + " panel " + panel_name(panel) + ": " + e.what());
            }
            std::string stem = "table_" + id;
            if (table_has_panels(id)) stem += "_panel" + panel_name(panel);
            const auto csv_path = out_dir / (stem + ".csv");
            const auto md_path = out_dir / (stem + ".md");
            write_file(csv_path, render_csv(doc));
            write_file(md_path, render_markdown(doc));
            written.push_back(csv_path);
            written.push_back(md_path);
            summary["tables"][stem] = doc.values;
        }
    }

    const auto json_path = out_dir / "summary.json";
    write_file(json_path, summary.dump(2) + "\n");
    written.push_back(json_path);
    return written;
}

std::vector<std::filesystem::path> write_figures(const Analysis& a, const RunConfig& config,
                                                 const std::vector<std::string>& ids,
                                                 const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const std::string& id : ids) {
        TableDoc doc;
        if (id == "1") {
            doc = figure_1(a, config);
        } else if (id == "2") {
            doc = figure_2(a, config);
        } else {
            throw DataError("unknown figure id '" + id + "'");
        }
        const auto path = out_dir / ("figure" + id + ".csv");
        write_file(path, render_csv(doc));
        written.push_back(path);
    }
    return written;
}

}  // namespace dpr::tables
