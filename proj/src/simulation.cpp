#include "urkit/simulation.hpp"

#include <cmath>
#include <numbers>

#include "urkit/errors.hpp"

namespace urkit {

namespace rng {

double Stream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

double Stream::student_t_unit(int df) {
    // t = Z / sqrt(chi2_df / df), chi2 from df squared normals; rescaled to
    // unit variance (requires df > 2)
    double chi2 = 0.0;
    for (int i = 0; i < df; ++i) {
        const double z = gaussian();
        chi2 += z * z;
    }
    const double t = gaussian() / std::sqrt(chi2 / df);
    return t * std::sqrt((df - 2.0) / df);
}

}  // namespace rng

bool ar_polynomial_stationary(const std::vector<double>& b) {
    // step-down to reflection coefficients; stationary iff all in (-1, 1)
    std::vector<double> a = b;
    for (std::size_t order = a.size(); order > 0; --order) {
        const double kappa = a[order - 1];
        if (!(std::abs(kappa) < 1.0)) return false;
        std::vector<double> prev(order - 1);
        const double denom = 1.0 - kappa * kappa;
        for (std::size_t j = 0; j + 1 < order; ++j) {
            prev[j] = (a[j] + kappa * a[order - 2 - j]) / denom;
        }
        a = std::move(prev);
    }
    return true;
}

void DgpConfig::validate() const {
    if (!(sigma > 0.0)) throw Error("DgpConfig: sigma must be positive");
    if (gamma.size() != det.column_count()) {
        throw Error("DgpConfig: gamma length " + std::to_string(gamma.size()) +
                    " does not match deterministic column count " +
                    std::to_string(det.column_count()));
    }
    if (burn_in < 0) throw Error("DgpConfig: burn_in must be nonnegative");
    if (innovations == Innovations::StudentT && student_df < 3) {
        throw Error("DgpConfig: Student-t innovations need df >= 3");
    }
    if (!error_ar.empty() && !ar_polynomial_stationary(error_ar)) {
        throw NonStationaryErrorPolynomial(
            "DgpConfig: error AR polynomial has a root on or inside the unit circle");
    }
}

std::vector<double> simulate(const DgpConfig& config, long T, SeedSpec seed) {
    if (T < 1) throw Error("simulate: T must be >= 1");
    config.validate();

    rng::Stream stream(seed);
    const long k = static_cast<long>(config.error_ar.size());
    const long total = config.burn_in + T;

    // u_t via the AR(b) recursion, pre-sample u = 0
    std::vector<double> u(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) {
        double eps = (config.innovations == DgpConfig::Innovations::Gaussian)
                         ? stream.gaussian()
                         : stream.student_t_unit(config.student_df);
        double v = config.sigma * eps;
        for (long j = 1; j <= k && j <= i; ++j) {
            v += config.error_ar[static_cast<std::size_t>(j - 1)] *
                 u[static_cast<std::size_t>(i - j)];
        }
        u[static_cast<std::size_t>(i)] = v;
    }

    // z_t = alpha z_{t-1} + u_t, started at z0 before the burn-in window
    std::vector<double> y(static_cast<std::size_t>(T));
    double z = config.z0;
    for (long i = 0; i < total; ++i) {
        z = config.alpha * z + u[static_cast<std::size_t>(i)];
        if (i >= config.burn_in) y[static_cast<std::size_t>(i - config.burn_in)] = z;
    }

    if (config.det.kind != DetSpec::Kind::None) {
        DesignMatrix x = build(config.det, 1, T);
        for (std::size_t j = 0; j < x.m(); ++j) {
            const double* col = x.values.col(j);
            for (long t = 0; t < T; ++t) {
                y[static_cast<std::size_t>(t)] += config.gamma[j] * col[t];
            }
        }
    }
    return y;
}

}  // namespace urkit
