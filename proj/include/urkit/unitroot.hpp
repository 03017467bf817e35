#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urkit/deterministics.hpp"
#include "urkit/regression.hpp"

namespace urkit {

enum class Method { OneStep, TwoStep, ResidualOnly, ZeroPadded };
enum class TwoStepForm { Levels, Residual };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

// Output of one estimation pipeline, with the full test-statistic layer.
struct UnitRootResult {
    Method method;
    double rho_hat;
    double se_rho;
    double t_df;       // sign(rho_hat - 1) * sqrt(f_stat)
    double f_stat;
    double chi;        // LM form: T_eff * F / ((T_eff - m) + F)
    double t_lm;       // sign(rho_hat - 1) * sqrt(chi)
    int k;             // augmentation lags
    int p;             // k + 1
    long t_effective;  // rows in the final regression
    std::size_t m;     // regressor count of the final regression
    std::optional<std::vector<double>> gamma_structural;
    std::vector<double> beta;  // ADF difference-lag coefficients
    std::vector<std::string> design_labels;
    OlsFit fit;
};

// chi and t_lm from the exclusion F; inverts back through
// F = (T - m) chi / (T - chi).
std::pair<double, double> lm_from_f(double f_stat, long t_effective, std::size_t m, int sign);

// Levels coefficients rho_1..rho_p -> (rho = sum, beta_j = -(rho_{j+1}+...+rho_p)).
std::pair<double, std::vector<double>> reparam_levels_to_adf(const std::vector<double>& rho_j);
// Exact inverse of the above.
std::vector<double> reparam_adf_to_levels(double rho, const std::vector<double>& beta);

UnitRootResult one_step_df(std::span<const double> y, const DetSpec& spec, int k);
UnitRootResult two_step_df(std::span<const double> y, const DetSpec& spec, int k,
                           TwoStepForm form = TwoStepForm::Levels);
UnitRootResult residual_only_df(std::span<const double> y, const DetSpec& spec, int k);
UnitRootResult zero_padded_df(std::span<const double> y, const DetSpec& spec, int k);

// Schwert-style convenience rule k = floor(4 (T/100)^{1/4}).
int schwert_lag_rule(long T);

namespace detail {
// One-step regression with the deterministic component entered un-lagged.
// Deliberately misspecified off the polynomial family; test-only.
UnitRootResult one_step_df_unexpanded(std::span<const double> y, const DetSpec& spec, int k);
}  // namespace detail

}  // namespace urkit
