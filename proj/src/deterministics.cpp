#include "urkit/deterministics.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "urkit/errors.hpp"

namespace urkit {

namespace {

double poly_term(long t, int power) {
    if (power == 0) return 1.0;
    return std::pow(static_cast<double>(t), power);
}

// Per-column evaluators for a spec; deterministic functions of t that
// extend naturally to nonpositive t (lagged evaluation needs this).
std::vector<CustomColumn> column_functions(const DetSpec& spec) {
    std::vector<CustomColumn> cols;
    switch (spec.kind) {
        case DetSpec::Kind::None:
            break;
        case DetSpec::Kind::Polynomial:
        case DetSpec::Kind::Break:
            for (int r = 0; r <= spec.order; ++r) {
                std::string label = (r == 0) ? "const" : (r == 1 ? "t" : "t^" + std::to_string(r));
                cols.push_back({label, [r](long t) { return poly_term(t, r); }});
            }
            if (spec.kind == DetSpec::Kind::Break) {
                const long tb = spec.break_date;
                cols.push_back({"DU", [tb](long t) { return t > tb ? 1.0 : 0.0; }});
                if (spec.with_trend_break) {
                    cols.push_back({"DT", [tb](long t) {
                                        return t > tb ? static_cast<double>(t - tb) : 0.0;
                                    }});
                }
            }
            break;
        case DetSpec::Kind::Custom:
            cols = spec.custom;
            break;
    }
    return cols;
}

std::vector<CustomColumn> load_custom_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open custom deterministics file: " + path);
    std::vector<std::vector<double>> columns;
    std::vector<std::string> labels;
    std::string line;
    long row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            first = false;
            // header row is optional: non-numeric first line supplies labels
            bool numeric = true;
            for (const auto& c : cells) {
                try {
                    std::size_t pos = 0;
                    std::stod(c, &pos);
                    if (pos != c.size()) numeric = false;
                } catch (...) {
                    numeric = false;
                }
            }
            columns.resize(cells.size());
            if (!numeric) {
                labels = cells;
                continue;
            }
            for (std::size_t j = 0; j < cells.size(); ++j) labels.push_back("x" + std::to_string(j));
        }
        ++row;
        if (cells.size() != columns.size()) {
            throw ParseError(path + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(columns.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            try {
                std::size_t pos = 0;
                double v = std::stod(cells[j], &pos);
                if (pos != cells[j].size()) throw ParseError("");
                columns[j].push_back(v);
            } catch (...) {
                throw ParseError(path + ": non-numeric cell at row " + std::to_string(row) +
                                 ", column " + std::to_string(j + 1));
            }
        }
    }
    if (columns.empty() || columns[0].empty()) {
        throw ParseError(path + ": no data rows");
    }
    std::vector<CustomColumn> cols;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto values = std::make_shared<std::vector<double>>(std::move(columns[j]));
        cols.push_back({labels[j], [values](long t) {
                            if (t < 1 || t > static_cast<long>(values->size())) return 0.0;
                            return (*values)[static_cast<std::size_t>(t - 1)];
                        }});
    }
    return cols;
}

}  // namespace

DetSpec DetSpec::parse(const std::string& text) {
    if (text == "none") return none();
    if (text == "c") return polynomial(0);
    if (text == "ct") return polynomial(1);
    if (text.rfind("poly:", 0) == 0) {
        int r;
        try {
            r = std::stoi(text.substr(5));
        } catch (...) {
            throw ParseError("bad polynomial order in det spec: " + text);
        }
        if (r < 0) throw ParseError("polynomial order must be nonnegative: " + text);
        return polynomial(r);
    }
    if (text.rfind("break:", 0) == 0) {
        std::string rest = text.substr(6);
        bool trend = false;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            std::string flag = rest.substr(colon + 1);
            if (flag != "trend") throw ParseError("bad break spec: " + text);
            trend = true;
            rest = rest.substr(0, colon);
        }
        long tb;
        try {
            tb = std::stol(rest);
        } catch (...) {
            throw ParseError("bad break date in det spec: " + text);
        }
        // base is intercept + trend, the usual crash specification
        return level_break(1, tb, trend);
    }
    if (text.rfind("custom:", 0) == 0) {
        return custom_columns(load_custom_csv(text.substr(7)));
    }
    throw ParseError("unrecognized det spec: " + text);
}

std::size_t DetSpec::column_count() const {
    switch (kind) {
        case Kind::None:
            return 0;
        case Kind::Polynomial:
            return static_cast<std::size_t>(order + 1);
        case Kind::Break:
            return static_cast<std::size_t>(order + 1) + 1 + (with_trend_break ? 1 : 0);
        case Kind::Custom:
            return custom.size();
    }
    return 0;
}

std::vector<std::string> DetSpec::labels() const {
    std::vector<std::string> out;
    for (const auto& c : column_functions(*this)) out.push_back(c.label);
    return out;
}

std::string DetSpec::to_string() const {
    switch (kind) {
        case Kind::None:
            return "none";
        case Kind::Polynomial:
            if (order == 0) return "c";
            if (order == 1) return "ct";
            return "poly:" + std::to_string(order);
        case Kind::Break:
            return "break:" + std::to_string(break_date) + (with_trend_break ? ":trend" : "");
        case Kind::Custom:
            return "custom[" + std::to_string(custom.size()) + "]";
    }
    return "?";
}

DesignMatrix build(const DetSpec& spec, long t_first, long t_last) {
    if (t_first > t_last) throw Error("build: t_first > t_last");
    if (spec.kind == DetSpec::Kind::Break) {
        if (spec.break_date < 1 || spec.break_date <= t_first || spec.break_date >= t_last) {
            throw InvalidBreakDate("break date " + std::to_string(spec.break_date) +
                                   " outside (" + std::to_string(t_first) + ", " +
                                   std::to_string(t_last) + ")");
        }
    }
    const auto cols = column_functions(spec);
    const std::size_t n = static_cast<std::size_t>(t_last - t_first + 1);
    DesignMatrix out;
    out.values = Matrix(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        double* dst = out.values.col(j);
        for (long t = t_first; t <= t_last; ++t) {
            dst[static_cast<std::size_t>(t - t_first)] = cols[j].fn(t);
        }
        out.column_labels.push_back(cols[j].label);
    }
    return out;
}

DesignMatrix lagged_expansion(const DetSpec& spec, int p, long t_first, long t_last,
                              double rank_tol) {
    if (p < 0) throw Error("lagged_expansion: p must be nonnegative");
    if (spec.kind == DetSpec::Kind::Break) {
        if (spec.break_date < 1 || spec.break_date >= t_last) {
            throw InvalidBreakDate("break date " + std::to_string(spec.break_date) +
                                   " outside (1, " + std::to_string(t_last) + ")");
        }
    }
    const auto cols = column_functions(spec);
    const std::size_t n = static_cast<std::size_t>(t_last - t_first + 1);
    DesignMatrix full;
    full.values = Matrix(n, cols.size() * static_cast<std::size_t>(p + 1));
    std::size_t j = 0;
    for (int lag = 0; lag <= p; ++lag) {
        for (const auto& c : cols) {
            double* dst = full.values.col(j);
            for (long t = t_first; t <= t_last; ++t) {
                dst[static_cast<std::size_t>(t - t_first)] = c.fn(t - lag);
            }
            full.column_labels.push_back(lag == 0 ? c.label
                                                  : c.label + "_l" + std::to_string(lag));
            ++j;
        }
    }
    return prune_collinear(full, rank_tol).first;
}

}  // namespace urkit
