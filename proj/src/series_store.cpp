#include "dpr/series_store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "dpr/errors.hpp"

namespace dpr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim whitespace and a possible trailing \r.
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back("");
    return out;
}

}  // namespace

void MonthlySeries::validate() const {
    if (records.size() < 24) {
        throw DataError("monthly series needs at least 24 rows, got " +
                        std::to_string(records.size()));
    }
    for (size_t i = 0; i < records.size(); ++i) {
        const MonthlyRecord& rec = records[i];
        const std::string where = "row " + std::to_string(i + 1) + " (" + rec.date.str() + ")";
        if (!(rec.total_return > 0.0) || !(rec.exdiv_return > 0.0) || !(rec.risk_free > 0.0)) {
            throw DataError("non-positive return at " + where);
        }
        if (!(rec.price_level > 0.0)) {
            throw DataError("non-positive price level at " + where);
        }
        if (rec.total_return < rec.exdiv_return) {
            throw DataError("total return below ex-dividend return (negative dividend) at " +
                            where);
        }
        if (i > 0) {
            const int gap = rec.date - records[i - 1].date;
            if (gap != 1) {
                throw DataError("date gap between " + records[i - 1].date.str() + " and " +
                                rec.date.str());
            }
            const double implied = records[i - 1].price_level * rec.exdiv_return;
            if (std::abs(rec.price_level - implied) > 1e-10 * rec.price_level) {
                throw DataError("price level inconsistent with ex-dividend return at " + where);
            }
        }
    }
}

MonthlySeries load_monthly_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file: " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw DataError("empty data file: " + path.string());
    const std::vector<std::string> cols = split_csv_line(header);

    auto find_col = [&](const std::string& name, bool required) -> long {
        const auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end()) {
            if (required) throw DataError("missing column '" + name + "' in " + path.string());
            return -1;
        }
        return it - cols.begin();
    };
    const long c_date = find_col(schema.date, true);
    const long c_r = find_col(schema.total_return, true);
    const long c_x = find_col(schema.exdiv_return, true);
    const long c_rf = find_col(schema.risk_free, true);
    const long c_p = find_col(schema.price, false);

    MonthlySeries series;
    std::string line;
    size_t lineno = 1;
    std::vector<std::optional<double>> supplied_price;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        auto cell = [&](long c) -> const std::string& {
            if (c < 0 || c >= static_cast<long>(cells.size())) {
                throw DataError("line " + std::to_string(lineno) + ": too few columns");
            }
            return cells[c];
        };
        auto num = [&](long c, const char* what) {
            try {
                return std::stod(cell(c));
            } catch (const std::exception&) {
                throw DataError("line " + std::to_string(lineno) + ": unparseable " +
                                std::string(what) + " '" + cell(c) + "'");
            }
        };

        MonthlyRecord rec;
        try {
            rec.date = YearMonth::parse(cell(c_date));
        } catch (const std::invalid_argument& e) {
            throw DataError("line " + std::to_string(lineno) + ": " + e.what());
        }
        rec.total_return = num(c_r, "total return");
        rec.exdiv_return = num(c_x, "ex-dividend return");
        rec.risk_free = num(c_rf, "risk-free return");
        if (c_p >= 0 && !cell(c_p).empty()) {
            supplied_price.emplace_back(num(c_p, "price"));
        } else {
            supplied_price.emplace_back(std::nullopt);
        }
        series.records.push_back(rec);
    }

    if (series.records.size() < 24) {
        throw DataError("need at least 24 data rows, got " +
                        std::to_string(series.records.size()) + " in " + path.string());
    }

    // Price levels: chain from ex-dividend returns, anchored at the first
    // supplied level (or 1.0 when the column is absent). Supplied levels are
    // cross-checked against the chain.
    long first_supplied = -1;
    for (size_t i = 0; i < supplied_price.size(); ++i) {
        if (supplied_price[i]) {
            first_supplied = static_cast<long>(i);
            break;
        }
    }
    std::vector<double> chain(series.records.size());
    chain[0] = 1.0;
    for (size_t i = 1; i < chain.size(); ++i) {
        chain[i] = chain[i - 1] * series.records[i].exdiv_return;
    }
    double anchor = 1.0;
    if (first_supplied >= 0) {
        anchor = *supplied_price[first_supplied] / chain[first_supplied];
        series.price_provenance = "anchored at supplied " +
                                  series.records[first_supplied].date.str() + " level";
    } else {
        series.price_provenance = "reconstructed, anchor=1.0";
    }
    size_t n_supplied = 0;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (supplied_price[i]) {
            series.records[i].price_level = *supplied_price[i];
            ++n_supplied;
        } else {
            series.records[i].price_level = anchor * chain[i];
        }
    }
    if (n_supplied == chain.size()) series.price_provenance = "file";

    series.validate();
    return series;
}

void write_monthly_csv(const MonthlySeries& series, const std::filesystem::path& path,
                       const CsvSchema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << schema.date << ',' << schema.total_return << ',' << schema.exdiv_return << ','
        << schema.price << ',' << schema.risk_free << '\n';
    char buf[256];
    for (const MonthlyRecord& rec : series.records) {
        std::snprintf(buf, sizeof(buf), "%04d%02d,%.17g,%.17g,%.17g,%.17g\n", rec.date.year,
                      rec.date.month, rec.total_return, rec.exdiv_return, rec.price_level,
                      rec.risk_free);
        out << buf;
    }
}

double implied_monthly_dividend(const MonthlyRecord& rec) {
    if (!(rec.exdiv_return > 0.0) || !(rec.price_level > 0.0)) {
        throw std::invalid_argument("implied_monthly_dividend: non-positive return or price at " +
                                    rec.date.str());
    }
    if (rec.total_return < rec.exdiv_return) {
        throw DataError("negative implied dividend at " + rec.date.str());
    }
    return (rec.total_return / rec.exdiv_return - 1.0) * rec.price_level;
}

double annual_dividend_summed(const MonthlySeries& series, size_t t) {
    if (t + 1 < 12 || t >= series.size()) {
        throw std::invalid_argument("annual_dividend_summed: fewer than 12 months of history");
    }
    double sum = 0.0;
    for (size_t i = 0; i < 12; ++i) sum += implied_monthly_dividend(series.records[t - i]);
    return sum;
}

double annual_dividend_reinvested(const MonthlySeries& series, size_t t) {
    if (t + 1 < 12 || t >= series.size()) {
        throw std::invalid_argument("annual_dividend_reinvested: fewer than 12 months of history");
    }
    // Walk forward so each dividend compounds at the realized market return
    // of the months after its payment.
    double sum = 0.0;
    for (size_t i = 0; i < 12; ++i) {
        const size_t k = t - 11 + i;
        sum = sum * series.records[k].total_return + implied_monthly_dividend(series.records[k]);
    }
    return sum;
}

AnnualPanel build_annual_panel(const MonthlySeries& series) {
    if (series.size() < 24) {
        throw std::invalid_argument("build_annual_panel: need at least 24 months");
    }
    const size_t n = series.size();
    const size_t rows = n - 11;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    AnnualPanel panel;
    panel.date.reserve(rows);
    panel.d.resize(rows);
    panel.dstar.resize(rows);
    panel.p.resize(rows);
    panel.r.resize(rows);
    panel.re.resize(rows);
    panel.rf.resize(rows);
    panel.dd.setConstant(rows, nan);
    panel.ddstar.setConstant(rows, nan);

    for (size_t t = 11; t < n; ++t) {
        const size_t i = t - 11;
        panel.date.push_back(series.records[t].date);
        panel.d(i) = std::log(annual_dividend_summed(series, t));
        panel.dstar(i) = std::log(annual_dividend_reinvested(series, t));
        panel.p(i) = std::log(series.records[t].price_level);
        double lr = 0.0, lrf = 0.0;
        for (size_t j = 0; j < 12; ++j) {
            lr += std::log(series.records[t - j].total_return);
            lrf += std::log(series.records[t - j].risk_free);
        }
        panel.r(i) = lr;
        panel.rf(i) = lrf;
        panel.re(i) = lr - lrf;
        if (i >= 12) {
            panel.dd(i) = panel.d(i) - panel.d(i - 12);
            panel.ddstar(i) = panel.dstar(i) - panel.dstar(i - 12);
        }
    }
    return panel;
}

std::vector<Eigen::Index> AnnualPanel::december_rows() const {
    std::vector<Eigen::Index> out;
    for (size_t i = 0; i < date.size(); ++i) {
        if (date[i].is_december()) out.push_back(static_cast<Eigen::Index>(i));
    }
    return out;
}

AnnualPanel AnnualPanel::slice(Eigen::Index from, Eigen::Index to) const {
    if (from < 0 || to >= rows() || from > to) {
        throw std::invalid_argument("AnnualPanel::slice: bad range");
    }
    const Eigen::Index len = to - from + 1;
    AnnualPanel out;
    out.date.assign(date.begin() + from, date.begin() + to + 1);
    out.d = d.segment(from, len);
    out.dstar = dstar.segment(from, len);
    out.p = p.segment(from, len);
    out.r = r.segment(from, len);
    out.re = re.segment(from, len);
    out.rf = rf.segment(from, len);
    out.dd = dd.segment(from, len);
    out.ddstar = ddstar.segment(from, len);
    // Growth entries whose base month fell outside the slice stay valid; the
    // panel is a view of already-computed quantities.
    return out;
}

double horizon_aggregate(const AnnualPanel& panel, const Eigen::VectorXd& series, Eigen::Index t,
                         int h_years, std::optional<double> rho) {
    if (series.size() != panel.rows()) {
        throw std::invalid_argument("horizon_aggregate: series not panel-aligned");
    }
    if (h_years < 1) throw std::invalid_argument("horizon_aggregate: horizon must be >= 1");
    if (t < 0 || t + static_cast<Eigen::Index>(12) * h_years > panel.rows() - 1) {
        throw std::invalid_argument("horizon_aggregate: horizon exceeds sample");
    }
    double sum = 0.0;
    double w = 1.0;
    for (int j = 1; j <= h_years; ++j) {
        sum += w * series(t + 12 * j);
        if (rho) w *= *rho;
    }
    return sum;
}

}  // namespace dpr
