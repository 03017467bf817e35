#include "urkit/io.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "urkit/errors.hpp"

namespace urkit {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    if (trim(s).empty()) return out;
    for (const auto& cell : split(s, ',')) {
        double v;
        if (!parse_double(cell, v)) throw ParseError("bad number '" + cell + "' in " + what);
        out.push_back(v);
    }
    return out;
}

std::string now_utc() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open series file: " + path);
    std::vector<double> values;
    std::string line;
    long lineno = 0;
    bool first_data = true;
    std::size_t ncols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split(t, ',');
        if (first_data) {
            if (cells.empty() || cells.size() > 2) {
                throw ParseError(path + ": line " + std::to_string(lineno) +
                                 ": expected 1 or 2 columns, got " + std::to_string(cells.size()));
            }
            ncols = cells.size();
            double v;
            if (!parse_double(cells.back(), v)) {
                first_data = false;  // header row
                continue;
            }
            first_data = false;
        }
        if (cells.size() != ncols) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": expected " +
                             std::to_string(ncols) + " columns, got " +
                             std::to_string(cells.size()));
        }
        const std::string& cell = cells.back();
        double v;
        if (cell.empty() || !parse_double(cell, v)) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ", column " +
                             std::to_string(cells.size()) + ": non-numeric value '" + cell + "'");
        }
        values.push_back(v);
    }
    if (values.size() < 10) {
        throw ParseError(path + ": need at least 10 observations, found " +
                         std::to_string(values.size()));
    }
    return values;
}

void RunManifest::write(std::ostream& out) const {
    out << "# urkit " << version << "\n";
    out << "# command: " << command << "\n";
    out << "# config: " << config << "\n";
    out << "# seed: " << seed << "\n";
    out << "# timestamp: " << (timestamp.empty() ? now_utc() : timestamp) << "\n";
}

void write_series_csv(std::ostream& out, const std::vector<double>& values,
                      const RunManifest& manifest) {
    manifest.write(out);
    out << "t,y\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i + 1) << "," << format_full(values[i]) << "\n";
    }
}

void write_cv_csv(std::ostream& out, const CriticalValueTable& table, const RunManifest& manifest) {
    manifest.write(out);
    out << "# config_hash: " << table.config_hash << "\n";
    out << "# reps: " << table.reps << "\n";
    out << "# dropped: " << table.dropped << "\n";
    out << "method,statistic,quantile,value\n";
    for (const auto& [key, value] : table.entries) {
        const auto& [m, s, q] = key;
        out << method_name(m) << "," << statistic_name(s) << "," << format_full(q) << ","
            << format_full(value) << "\n";
    }
}

void write_report_csv(std::ostream& out, const ExperimentReport& report,
                      const RunManifest& manifest) {
    manifest.write(out);
    out << "# config_hash: " << report.config_hash << "\n";
    out << "# reps: " << report.reps << "\n";
    out << "# dropped: " << report.dropped << "\n";
    out << "kind,method,statistic,dgp,value,mc_se\n";
    for (const auto& r : report.rows) {
        out << r.kind << "," << r.method << "," << r.statistic << "," << r.dgp << ","
            << format_full(r.value) << "," << format_full(r.mc_se) << "\n";
    }
}

void write_power_curve_csv(std::ostream& out, const ExperimentReport& report,
                           const RunManifest& manifest) {
    manifest.write(out);
    out << "alpha,method,statistic,rate,mc_se\n";
    for (const auto& r : report.rows) {
        if (r.kind != "rate") continue;
        std::string alpha = r.dgp;
        if (alpha == "null") {
            alpha = "1";
        } else if (alpha.rfind("alpha=", 0) == 0) {
            alpha = alpha.substr(6);
        }
        out << alpha << "," << r.method << "," << r.statistic << "," << format_full(r.value) << ","
            << format_full(r.mc_se) << "\n";
    }
}

CriticalValueTable read_cv_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open critical value table: " + path);
    CriticalValueTable table;
    std::string line;
    long lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (t.rfind("# reps:", 0) == 0) table.reps = std::stol(trim(t.substr(7)));
            if (t.rfind("# seed:", 0) == 0) table.base_seed = std::stoull(trim(t.substr(7)));
            if (t.rfind("# dropped:", 0) == 0) table.dropped = std::stol(trim(t.substr(10)));
            continue;
        }
        if (!header_seen) {
            header_seen = true;  // column header row
            continue;
        }
        auto cells = split(t, ',');
        if (cells.size() != 4) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": expected 4 columns");
        }
        auto m = method_from_name(cells[0]);
        if (!m) throw ParseError(path + ": unknown method '" + cells[0] + "'");
        Statistic s;
        if (cells[1] == "t_df") {
            s = Statistic::TDf;
        } else if (cells[1] == "t_lm") {
            s = Statistic::TLm;
        } else {
            throw ParseError(path + ": unknown statistic '" + cells[1] + "'");
        }
        double q, v;
        if (!parse_double(cells[2], q) || !parse_double(cells[3], v)) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": bad number");
        }
        table.entries[{*m, s, q}] = v;
    }
    if (table.entries.empty()) throw ParseError(path + ": no critical value rows");
    return table;
}

namespace {

using Section = std::vector<std::pair<std::string, std::string>>;

DgpConfig parse_dgp_section(const Section& sec, const DetSpec& spec, const std::string& name) {
    DgpConfig d;
    d.det = spec;
    d.gamma.assign(spec.column_count(), 0.0);
    for (const auto& [key, value] : sec) {
        if (key == "alpha") {
            if (!parse_double(value, d.alpha)) throw ParseError(name + ".alpha: bad number");
        } else if (key == "sigma") {
            if (!parse_double(value, d.sigma)) throw ParseError(name + ".sigma: bad number");
        } else if (key == "z0") {
            if (!parse_double(value, d.z0)) throw ParseError(name + ".z0: bad number");
        } else if (key == "burn_in") {
            d.burn_in = std::stol(value);
        } else if (key == "gamma") {
            d.gamma = parse_double_list(value, name + ".gamma");
        } else if (key == "error_ar") {
            d.error_ar = parse_double_list(value, name + ".error_ar");
        } else if (key == "innovations") {
            if (value == "gaussian") {
                d.innovations = DgpConfig::Innovations::Gaussian;
            } else if (value.rfind("t:", 0) == 0) {
                d.innovations = DgpConfig::Innovations::StudentT;
                d.student_df = std::stoi(value.substr(2));
            } else {
                throw ParseError(name + ".innovations: expected 'gaussian' or 't:df'");
            }
        } else {
            throw ParseError(name + ": unknown key '" + key + "'");
        }
    }
    if (d.gamma.size() != spec.column_count()) {
        throw ParseError(name + ".gamma: expected " + std::to_string(spec.column_count()) +
                         " values, got " + std::to_string(d.gamma.size()));
    }
    return d;
}

}  // namespace

ExperimentConfig read_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);

    std::vector<std::pair<std::string, Section>> sections;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        // strip trailing comments
        auto hash = t.find_first_of("#;");
        if (hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw ParseError(path + ": line " + std::to_string(lineno) + ": bad section header");
            }
            sections.emplace_back(trim(t.substr(1, t.size() - 2)), Section{});
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos || sections.empty()) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": expected key = value");
        }
        sections.back().second.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }

    const Section* experiment = nullptr;
    for (const auto& [nm, sec] : sections) {
        if (nm == "experiment") experiment = &sec;
    }
    if (!experiment) throw ParseError(path + ": missing [experiment] section");

    ExperimentConfig cfg;
    cfg.methods.clear();
    bool has_spec = false;
    for (const auto& [key, value] : *experiment) {
        if (key == "methods" || key == "method") {
            for (const auto& nm : split(value, ',')) {
                auto m = method_from_name(nm);
                if (!m) throw ParseError(path + ": unknown method '" + nm + "'");
                cfg.methods.push_back(*m);
            }
        } else if (key == "spec" || key == "det") {
            cfg.spec = DetSpec::parse(value);
            has_spec = true;
        } else if (key == "T") {
            cfg.T = std::stol(value);
        } else if (key == "k") {
            if (value == "auto") {
                cfg.schwert_rule = true;
            } else {
                cfg.k = std::stoi(value);
            }
        } else if (key == "reps") {
            cfg.reps = std::stol(value);
        } else if (key == "seed") {
            cfg.base_seed = std::stoull(value);
        } else if (key == "nominal_size") {
            if (!parse_double(value, cfg.nominal_size)) {
                throw ParseError(path + ": nominal_size: bad number");
            }
        } else if (key == "quantiles") {
            cfg.quantiles = parse_double_list(value, "quantiles");
        } else if (key == "threads") {
            cfg.threads = std::stoi(value);
        } else {
            throw ParseError(path + ": [experiment] unknown key '" + key + "'");
        }
    }
    if (cfg.methods.empty()) throw ParseError(path + ": [experiment] needs methods = ...");
    if (!has_spec) throw ParseError(path + ": [experiment] needs spec = ...");

    bool has_null = false;
    for (const auto& [nm, sec] : sections) {
        if (nm == "dgp_null") {
            cfg.dgp_null = parse_dgp_section(sec, cfg.spec, "dgp_null");
            has_null = true;
        } else if (nm == "dgp_alt") {
            cfg.dgp_alts.push_back(parse_dgp_section(sec, cfg.spec, "dgp_alt"));
        } else if (nm != "experiment") {
            throw ParseError(path + ": unknown section [" + nm + "]");
        }
    }
    if (!has_null) {
        // driftless Gaussian random walk, the classical tabulation default
        cfg.dgp_null = DgpConfig{};
        cfg.dgp_null.det = cfg.spec;
        cfg.dgp_null.gamma.assign(cfg.spec.column_count(), 0.0);
        cfg.dgp_null.alpha = 1.0;
    }

    try {
        cfg.validate();
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

}  // namespace urkit
