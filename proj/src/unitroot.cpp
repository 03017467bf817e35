#include "urkit/unitroot.hpp"

#include <cmath>

#include "urkit/errors.hpp"
#include "urkit/kernels.hpp"

namespace urkit {

namespace {

constexpr double kDegenerateRssTol = 1e-20;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Final autoregression. The deterministic block was already pruned, so any
// remaining rank deficiency means the stochastic columns carry no independent
// information (e.g. an exactly deterministic series) -- a degenerate input,
// not a design error.
OlsFit fit_final(std::span<const double> response, const DesignMatrix& X) {
    try {
        return ols_fit(response, X);
    } catch (const RankDeficient&) {
        throw DegenerateResidualVariance(
            "unit root regression is degenerate (lagged levels collinear with deterministics)");
    }
}

void check_not_degenerate(const OlsFit& fit, std::span<const double> response,
                          std::size_t rho_index) {
    const double scale = std::max(1.0, kern::sumsq(response.data(), response.size()));
    if (fit.rss <= kDegenerateRssTol * scale || !(fit.std_errors[rho_index] > 0.0) ||
        !std::isfinite(fit.std_errors[rho_index])) {
        throw DegenerateResidualVariance(
            "unit root regression is degenerate (exact fit or zero residual variance)");
    }
}

UnitRootResult finalize(Method method, OlsFit fit, std::span<const double> response,
                        std::size_t det_cols, bool report_gamma, int k, long t_effective) {
    const std::size_t rho_index = det_cols;  // lagged level follows the deterministics
    check_not_degenerate(fit, response, rho_index);

    UnitRootResult r;
    r.method = method;
    r.k = k;
    r.p = k + 1;
    r.t_effective = t_effective;
    r.m = fit.m;
    r.rho_hat = fit.coefficients[rho_index];
    r.se_rho = fit.std_errors[rho_index];

    const WaldSingle w = wald_single(fit, rho_index, 1.0);
    const int sgn = sign_of(r.rho_hat - 1.0);
    r.f_stat = w.f;
    r.t_df = sgn * std::sqrt(w.f);
    auto [chi, t_lm] = lm_from_f(w.f, t_effective, fit.m, sgn);
    r.chi = chi;
    r.t_lm = t_lm;

    if (report_gamma) {
        r.gamma_structural.emplace(fit.coefficients.begin(),
                                   fit.coefficients.begin() + static_cast<long>(det_cols));
    }
    r.beta.assign(fit.coefficients.begin() + static_cast<long>(rho_index) + 1,
                  fit.coefficients.begin() + static_cast<long>(rho_index) + 1 + k);
    r.fit = std::move(fit);
    return r;
}

// first-step detrending over the full sample t = 1..T
struct StepOne {
    std::vector<double> zhat;
    std::vector<double> gamma_hat;
};

StepOne step_one(std::span<const double> y, const DetSpec& spec) {
    StepOne s;
    if (spec.kind == DetSpec::Kind::None) {
        s.zhat.assign(y.begin(), y.end());
        return s;
    }
    const long T = static_cast<long>(y.size());
    DesignMatrix x = build(spec, 1, T);
    OlsFit fit = ols_fit(y, x);
    s.zhat = std::move(fit.residuals);
    s.gamma_hat = std::move(fit.coefficients);
    return s;
}

UnitRootResult one_step_impl(std::span<const double> y, const DetSpec& spec, int k,
                             bool expand_lags) {
    if (k < 0) throw Error("one_step_df: k must be nonnegative");
    const long T = static_cast<long>(y.size());
    const int p = k + 1;
    if (T <= p + 1) throw InsufficientObservations("one_step_df: series too short");
    const std::size_t n = static_cast<std::size_t>(T - p);

    std::vector<DesignMatrix> pieces;
    if (spec.kind != DetSpec::Kind::None) {
        pieces.push_back(expand_lags ? lagged_expansion(spec, p, p + 1, T)
                                     : build(spec, p + 1, T));
    }
    const std::size_t det_cols = pieces.empty() ? 0 : pieces[0].m();

    DesignMatrix dyn;
    dyn.values = Matrix(n, static_cast<std::size_t>(1 + k));
    dyn.column_labels.push_back("y_l1");
    for (int j = 1; j <= k; ++j) dyn.column_labels.push_back("d_y_l" + std::to_string(j));
    std::vector<double> response(n);
    for (long t = p + 1; t <= T; ++t) {
        const std::size_t row = static_cast<std::size_t>(t - p - 1);
        response[row] = y[static_cast<std::size_t>(t - 1)];
        dyn.values(row, 0) = y[static_cast<std::size_t>(t - 2)];
        for (int j = 1; j <= k; ++j) {
            dyn.values(row, static_cast<std::size_t>(j)) =
                y[static_cast<std::size_t>(t - j - 1)] - y[static_cast<std::size_t>(t - j - 2)];
        }
    }
    pieces.push_back(std::move(dyn));

    DesignMatrix X = hcat(pieces);
    OlsFit fit = fit_final(response, X);
    UnitRootResult r =
        finalize(Method::OneStep, std::move(fit), response, det_cols, false, k, T - p);
    r.design_labels = X.column_labels;
    return r;
}

// step-2 design shared by the truncated and zero-padded pipelines
struct StepTwoDesign {
    DesignMatrix X;
    std::size_t rho_index;
    std::size_t det_cols;
};

StepTwoDesign step_two_design(const std::vector<double>& zhat, const DetSpec& spec, int k,
                              bool include_x, bool zero_padded) {
    const long T = static_cast<long>(zhat.size());
    const int p = k + 1;
    const long t_first = zero_padded ? 1 : p + 1;
    const std::size_t n = static_cast<std::size_t>(T - t_first + 1);

    auto zp = [&](long t) -> double {
        return (t >= 1) ? zhat[static_cast<std::size_t>(t - 1)] : 0.0;
    };

    std::vector<DesignMatrix> pieces;
    if (include_x && spec.kind != DetSpec::Kind::None) pieces.push_back(build(spec, t_first, T));
    const std::size_t det_cols = pieces.empty() ? 0 : pieces[0].m();

    DesignMatrix dyn;
    dyn.values = Matrix(n, static_cast<std::size_t>(1 + k));
    dyn.column_labels.push_back("z_l1");
    for (int j = 1; j <= k; ++j) dyn.column_labels.push_back("d_z_l" + std::to_string(j));
    for (long t = t_first; t <= T; ++t) {
        const std::size_t row = static_cast<std::size_t>(t - t_first);
        dyn.values(row, 0) = zp(t - 1);
        for (int j = 1; j <= k; ++j) {
            dyn.values(row, static_cast<std::size_t>(j)) = zp(t - j) - zp(t - j - 1);
        }
    }
    pieces.push_back(std::move(dyn));

    StepTwoDesign d;
    d.X = hcat(pieces);
    d.rho_index = det_cols;
    d.det_cols = det_cols;
    return d;
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::OneStep:
            return "onestep";
        case Method::TwoStep:
            return "twostep";
        case Method::ResidualOnly:
            return "residual";
        case Method::ZeroPadded:
            return "zeropad";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "onestep") return Method::OneStep;
    if (name == "twostep") return Method::TwoStep;
    if (name == "residual") return Method::ResidualOnly;
    if (name == "zeropad") return Method::ZeroPadded;
    return std::nullopt;
}

std::pair<double, double> lm_from_f(double f_stat, long t_effective, std::size_t m, int sign) {
    if (m < 1 || t_effective <= static_cast<long>(m)) {
        throw DegenerateDof("lm_from_f: need t_effective > m >= 1");
    }
    if (f_stat < 0.0) throw Error("lm_from_f: F must be nonnegative");
    const double T = static_cast<double>(t_effective);
    const double chi = T * f_stat / ((T - static_cast<double>(m)) + f_stat);
    return {chi, sign * std::sqrt(chi)};
}

std::pair<double, std::vector<double>> reparam_levels_to_adf(const std::vector<double>& rho_j) {
    const std::size_t p = rho_j.size();
    if (p < 1) throw Error("reparam_levels_to_adf: need p >= 1");
    double rho = 0.0;
    for (double r : rho_j) rho += r;
    std::vector<double> beta(p - 1);
    double tail = 0.0;
    for (std::size_t j = p - 1; j >= 1; --j) {
        tail += rho_j[j];
        beta[j - 1] = -tail;
    }
    return {rho, beta};
}

std::vector<double> reparam_adf_to_levels(double rho, const std::vector<double>& beta) {
    const std::size_t p = beta.size() + 1;
    std::vector<double> rho_j(p);
    // rho_1 = rho + beta_1; rho_j = beta_j - beta_{j-1}; rho_p = -beta_{k}
    if (p == 1) {
        rho_j[0] = rho;
        return rho_j;
    }
    rho_j[0] = rho + beta[0];
    for (std::size_t j = 1; j + 1 < p; ++j) rho_j[j] = beta[j] - beta[j - 1];
    rho_j[p - 1] = -beta[p - 2];
    return rho_j;
}

int schwert_lag_rule(long T) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(T) / 100.0, 0.25)));
}

UnitRootResult one_step_df(std::span<const double> y, const DetSpec& spec, int k) {
    return one_step_impl(y, spec, k, true);
}

namespace detail {
UnitRootResult one_step_df_unexpanded(std::span<const double> y, const DetSpec& spec, int k) {
    return one_step_impl(y, spec, k, false);
}
}  // namespace detail

UnitRootResult two_step_df(std::span<const double> y, const DetSpec& spec, int k,
                           TwoStepForm form) {
    if (k < 0) throw Error("two_step_df: k must be nonnegative");
    const long T = static_cast<long>(y.size());
    const int p = k + 1;
    if (T <= p + 1) throw InsufficientObservations("two_step_df: series too short");

    StepOne s1 = step_one(y, spec);
    StepTwoDesign d = step_two_design(s1.zhat, spec, k, true, false);

    const bool levels = (form == TwoStepForm::Levels);
    std::span<const double> response =
        levels ? y.subspan(static_cast<std::size_t>(p))
               : std::span<const double>(s1.zhat).subspan(static_cast<std::size_t>(p));

    OlsFit fit = fit_final(response, d.X);
    UnitRootResult r =
        finalize(Method::TwoStep, std::move(fit), response, d.det_cols, levels, k, T - p);
    r.design_labels = d.X.column_labels;
    return r;
}

UnitRootResult residual_only_df(std::span<const double> y, const DetSpec& spec, int k) {
    if (k < 0) throw Error("residual_only_df: k must be nonnegative");
    const long T = static_cast<long>(y.size());
    const int p = k + 1;
    if (T <= p + 1) throw InsufficientObservations("residual_only_df: series too short");

    StepOne s1 = step_one(y, spec);
    StepTwoDesign d = step_two_design(s1.zhat, spec, k, false, false);
    std::span<const double> response =
        std::span<const double>(s1.zhat).subspan(static_cast<std::size_t>(p));

    OlsFit fit = fit_final(response, d.X);
    UnitRootResult r =
        finalize(Method::ResidualOnly, std::move(fit), response, 0, false, k, T - p);
    r.design_labels = d.X.column_labels;
    return r;
}

UnitRootResult zero_padded_df(std::span<const double> y, const DetSpec& spec, int k) {
    if (k < 0) throw Error("zero_padded_df: k must be nonnegative");
    const long T = static_cast<long>(y.size());
    if (T <= k + 2) throw InsufficientObservations("zero_padded_df: series too short");

    StepOne s1 = step_one(y, spec);
    StepTwoDesign d = step_two_design(s1.zhat, spec, k, true, true);

    OlsFit fit = fit_final(y, d.X);
    UnitRootResult r = finalize(Method::ZeroPadded, std::move(fit), y, d.det_cols, true, k, T);
    r.design_labels = d.X.column_labels;
    return r;
}

}  // namespace urkit
