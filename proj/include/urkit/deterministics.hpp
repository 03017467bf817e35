#pragma once

#include <functional>
#include <string>
#include <vector>

#include "urkit/matrix.hpp"
#include "urkit/regression.hpp"

namespace urkit {

// One user-supplied deterministic regressor, a function of (1-based) time.
struct CustomColumn {
    std::string label;
    std::function<double(long)> fn;
};

// Declarative description of the deterministic component x_t.
struct DetSpec {
    enum class Kind { None, Polynomial, Custom, Break };

    Kind kind = Kind::Polynomial;
    int order = 0;             // polynomial order (Polynomial and Break base)
    long break_date = 0;       // T_B, Break only
    bool with_trend_break = false;
    std::vector<CustomColumn> custom;

    static DetSpec none() { return DetSpec{Kind::None, 0, 0, false, {}}; }
    static DetSpec polynomial(int r) { return DetSpec{Kind::Polynomial, r, 0, false, {}}; }
    static DetSpec level_break(int base_order, long tb, bool trend_break = false) {
        return DetSpec{Kind::Break, base_order, tb, trend_break, {}};
    }
    static DetSpec custom_columns(std::vector<CustomColumn> cols) {
        DetSpec s;
        s.kind = Kind::Custom;
        s.custom = std::move(cols);
        return s;
    }

    // Canonical string syntax: none | c | ct | poly:r | break:TB[:trend] |
    // custom:file.csv (one column per regressor, values at t = 1..T).
    static DetSpec parse(const std::string& text);

    std::size_t column_count() const;
    std::vector<std::string> labels() const;
    std::string to_string() const;  // canonical form where one exists
};

// x_t evaluated over t in [t_first, t_last], one row per t. Kind None
// yields a zero-column design.
DesignMatrix build(const DetSpec& spec, long t_first, long t_last);

// Columns of x evaluated at lags 0..p, then pruned for collinearity. For a
// full polynomial the lagged columns collapse back onto {1, t, ..., t^r};
// break dummies keep their lags as distinct columns.
DesignMatrix lagged_expansion(const DetSpec& spec, int p, long t_first, long t_last,
                              double rank_tol = kDefaultRankTol);

}  // namespace urkit
