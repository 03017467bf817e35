#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "urkit/simulation.hpp"
#include "urkit/unitroot.hpp"

namespace urkit {

enum class Statistic { TDf, TLm };

std::string statistic_name(Statistic s);

struct ExperimentConfig {
    std::vector<Method> methods;
    DetSpec spec = DetSpec::polynomial(0);
    long T = 100;
    int k = 0;
    bool schwert_rule = false;  // k = floor(4 (T/100)^{1/4}) when set
    long reps = 2000;
    std::uint64_t base_seed = 0;
    DgpConfig dgp_null;
    std::vector<DgpConfig> dgp_alts;
    double nominal_size = 0.05;
    std::vector<double> quantiles = {0.01, 0.05, 0.10};
    int threads = 1;

    int effective_k() const { return schwert_rule ? schwert_lag_rule(T) : k; }
    void validate() const;
    std::string summary() const;          // canonical key=value line
    std::uint64_t config_hash() const;    // FNV-1a of summary()
};

struct CriticalValueTable {
    // (method, statistic, quantile) -> empirical quantile of the statistic
    std::map<std::tuple<Method, Statistic, double>, double> entries;
    std::string config_summary;
    std::uint64_t config_hash = 0;
    long reps = 0;
    std::uint64_t base_seed = 0;
    long dropped = 0;

    double lookup(Method m, Statistic s, double q) const;  // MissingCriticalValue
    bool has(Method m, Statistic s, double q) const;
};

struct ReportRow {
    std::string kind;       // rate | sigma2 | sigma2_diff | order_frac | mse | gap
    std::string method;
    std::string statistic;  // t_df | t_lm | "" when not applicable
    std::string dgp;        // label of the generating process or coefficient
    double value = 0.0;
    double mc_se = 0.0;     // Monte Carlo standard error, 0 when not defined
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::string config_summary;
    std::uint64_t config_hash = 0;
    long reps = 0;
    std::uint64_t base_seed = 0;
    long dropped = 0;
};

// Empirical quantile, type-7 (linear interpolation); data must be sorted.
double quantile_type7(const std::vector<double>& sorted, double q);

// Null-distribution quantiles of t_df and t_lm for every requested method.
// Deterministic in (config, base_seed) regardless of config.threads.
CriticalValueTable tabulate_critical_values(const ExperimentConfig& config);

// Size under the null DGP and size-adjusted power under each alternative,
// evaluated against the supplied critical values (lower-tail tests).
ExperimentReport size_power(const ExperimentConfig& config, const CriticalValueTable& cv);

// Residual-variance comparison of the residual-only regression against the
// correctly specified two-step regression, per replication on shared paths.
ExperimentReport variance_comparison(const ExperimentConfig& config);

// Per-coefficient MSE of the three structural-coefficient estimators
// (first-step gamma_hat, two-step gamma_tilde, zero-padded gamma_bar).
ExperimentReport efficiency_comparison(const ExperimentConfig& config);

}  // namespace urkit
