#pragma once

#include <compare>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dpr {

/// A calendar month. Ordered, gap-free arithmetic via the serial month index.
struct YearMonth {
    int year = 1900;
    int month = 1;  // 1..12

    constexpr YearMonth() = default;
    constexpr YearMonth(int y, int m) : year(y), month(m) {
        if (m < 1 || m > 12) throw std::invalid_argument("YearMonth: month out of range");
    }

    /// Months elapsed since 0000-01; the canonical ordering key.
    [[nodiscard]] constexpr int index() const { return year * 12 + (month - 1); }

    static constexpr YearMonth from_index(int idx) {
        YearMonth ym;
        ym.year = idx / 12;
        ym.month = idx % 12 + 1;
        return ym;
    }

    [[nodiscard]] YearMonth plus_months(int n) const { return from_index(index() + n); }
    [[nodiscard]] bool is_december() const { return month == 12; }

    friend constexpr auto operator<=>(const YearMonth& a, const YearMonth& b) {
        return a.index() <=> b.index();
    }
    friend constexpr bool operator==(const YearMonth& a, const YearMonth& b) {
        return a.index() == b.index();
    }
    /// Signed month difference a - b.
    friend constexpr int operator-(const YearMonth& a, const YearMonth& b) {
        return a.index() - b.index();
    }

    [[nodiscard]] std::string str() const {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
        return buf;
    }

    /// Accepts YYYYMM or YYYY-MM.
    static YearMonth parse(const std::string& s);
};

inline YearMonth YearMonth::parse(const std::string& s) {
    int y = 0, m = 0;
    if (s.size() == 6 && std::sscanf(s.c_str(), "%4d%2d", &y, &m) == 2) {
        return YearMonth(y, m);
    }
    if (s.size() == 7 && s[4] == '-' && std::sscanf(s.c_str(), "%4d-%2d", &y, &m) == 2) {
        return YearMonth(y, m);
    }
    throw std::invalid_argument("unparseable month '" + s + "' (expected YYYYMM or YYYY-MM)");
}

}  // namespace dpr
