#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dpr/calendar.hpp"

namespace dpr {

/// One month of index data. All returns are gross (1.02 = +2%).
struct MonthlyRecord {
    YearMonth date;
    double total_return = 1.0;   ///< R(t), dividends included
    double exdiv_return = 1.0;   ///< X(t), price change only
    double price_level = 1.0;    ///< P_t
    double risk_free = 1.0;      ///< gross monthly risk-free return
};

/// Contiguous run of monthly records, strictly one month apart.
struct MonthlySeries {
    std::vector<MonthlyRecord> records;
    /// How the price column was obtained ("file", "reconstructed anchor=...").
    std::string price_provenance = "file";

    [[nodiscard]] size_t size() const { return records.size(); }
    [[nodiscard]] YearMonth first_month() const { return records.front().date; }
    [[nodiscard]] YearMonth last_month() const { return records.back().date; }
    /// Index of a month within the series, or -1 when outside the span.
    [[nodiscard]] long index_of(YearMonth ym) const {
        if (records.empty()) return -1;
        const long i = ym - records.front().date;
        return (i >= 0 && i < static_cast<long>(records.size())) ? i : -1;
    }

    /// Validates ordering, contiguity, positivity and the R >= X / price-chain
    /// invariants; throws DataError naming the offending row.
    void validate() const;
};

/// Column-name mapping for load_monthly_csv. The price column may be absent
/// from the file, in which case levels are reconstructed from ex-dividend
/// returns (anchored at the first supplied level, or 1.0 when none exists).
struct CsvSchema {
    std::string date = "date";
    std::string total_return = "R";
    std::string exdiv_return = "X";
    std::string price = "P";
    std::string risk_free = "RF";
};

MonthlySeries load_monthly_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Writes a series with full round-trip precision under the given schema.
void write_monthly_csv(const MonthlySeries& series, const std::filesystem::path& path,
                       const CsvSchema& schema = {});

/// D(t) = (R(t)/X(t) - 1) * P_t. Throws when R < X (negative dividend).
double implied_monthly_dividend(const MonthlyRecord& rec);

/// 12-month dividend sum ending at series index t.
double annual_dividend_summed(const MonthlySeries& series, size_t t);

/// 12-month dividend sum with interim dividends compounded at the total market
/// return through month t.
double annual_dividend_reinvested(const MonthlySeries& series, size_t t);

/// Overlapping annual panel: one row per month with at least 12 months of
/// history. Growth rates need a further 12 months and are NaN before that.
struct AnnualPanel {
    std::vector<YearMonth> date;
    Eigen::VectorXd d;        ///< log 12-month summed dividend
    Eigen::VectorXd dstar;    ///< log 12-month reinvested dividend
    Eigen::VectorXd p;        ///< log price level
    Eigen::VectorXd r;        ///< annual log total return
    Eigen::VectorXd re;       ///< annual log equity premium, r - rf exactly
    Eigen::VectorXd rf;       ///< annual log risk-free return
    Eigen::VectorXd dd;       ///< d_t - d_{t-12}, NaN for the first 12 rows
    Eigen::VectorXd ddstar;   ///< dstar_t - dstar_{t-12}, NaN likewise

    [[nodiscard]] Eigen::Index rows() const { return d.size(); }
    [[nodiscard]] long index_of(YearMonth ym) const {
        if (date.empty()) return -1;
        const long i = ym - date.front();
        return (i >= 0 && i < static_cast<long>(date.size())) ? i : -1;
    }
    /// Row indices of December observations (the non-overlapping annual grid).
    [[nodiscard]] std::vector<Eigen::Index> december_rows() const;
    /// Panel restricted to rows [from, to] inclusive.
    [[nodiscard]] AnnualPanel slice(Eigen::Index from, Eigen::Index to) const;
};

AnnualPanel build_annual_panel(const MonthlySeries& series);

/// Sum of series values at 12-month strides: sum_{j=1..h} w_j series[t + 12j]
/// with w_j = rho^{j-1} when rho is given and 1 otherwise. The series must be
/// panel-aligned. Throws when t + 12h falls outside the panel.
double horizon_aggregate(const AnnualPanel& panel, const Eigen::VectorXd& series, Eigen::Index t,
                         int h_years, std::optional<double> rho);

}  // namespace dpr
