#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "urkit/montecarlo.hpp"

namespace urkit {

inline constexpr const char* kToolVersion = "0.1.0";

// Round-trippable decimal rendering (%.17g).
std::string format_full(double v);

// CSV series input: one numeric column (optional header) or two columns
// (time label, value). Rejects missing or non-numeric cells outright.
std::vector<double> read_series(const std::string& path);

// Command provenance embedded as a comment block at the top of outputs.
struct RunManifest {
    std::string command;
    std::string config;   // fully resolved configuration summary
    std::uint64_t seed = 0;
    std::string version = kToolVersion;
    std::string timestamp;  // empty = stamp at write time

    void write(std::ostream& out) const;
};

void write_series_csv(std::ostream& out, const std::vector<double>& values,
                      const RunManifest& manifest);

void write_cv_csv(std::ostream& out, const CriticalValueTable& table, const RunManifest& manifest);
void write_report_csv(std::ostream& out, const ExperimentReport& report,
                      const RunManifest& manifest);

// Rejection-rate rows pivoted into power-curve form (alpha, rate per
// method/statistic), for plotting.
void write_power_curve_csv(std::ostream& out, const ExperimentReport& report,
                           const RunManifest& manifest);

// CV table parser for `urkit test --cv`; accepts write_cv_csv output.
CriticalValueTable read_cv_csv(const std::string& path);

// INI-style experiment config: [experiment] section plus [dgp_null] and
// repeatable [dgp_alt] sections.
ExperimentConfig read_experiment_config(const std::string& path);

}  // namespace urkit
