#include "urkit/regression.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "urkit/errors.hpp"
#include "urkit/kernels.hpp"

namespace urkit {

namespace {

double max_column_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double nrm = std::sqrt(kern::sumsq(a.col(j), a.rows()));
        if (nrm > best) best = nrm;
    }
    return best;
}

}  // namespace

DesignMatrix hcat(const std::vector<DesignMatrix>& pieces) {
    std::size_t n = 0;
    std::size_t m = 0;
    for (const auto& p : pieces) {
        if (p.n() > 0) n = p.n();
        m += p.m();
    }
    DesignMatrix out;
    out.values = Matrix(n, m);
    out.column_labels.reserve(m);
    std::size_t j = 0;
    for (const auto& p : pieces) {
        for (std::size_t c = 0; c < p.m(); ++c, ++j) {
            const double* src = p.values.col(c);
            double* dst = out.values.col(j);
            for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
            out.column_labels.push_back(p.column_labels[c]);
        }
    }
    return out;
}

OlsFit ols_fit(std::span<const double> y, const DesignMatrix& X, double rank_tol) {
    const std::size_t n = X.n();
    const std::size_t m = X.m();
    if (m == 0) throw InsufficientRegressors("ols_fit: design has no columns");
    if (y.size() != n) throw Error("ols_fit: y length does not match design rows");
    if (n <= m) {
        throw InsufficientObservations("ols_fit: n=" + std::to_string(n) +
                                       " <= m=" + std::to_string(m));
    }

    const double pivot_tol = rank_tol * std::max(max_column_norm(X.values), 1e-300);

    // Householder QR, rhs transformed alongside.
    Matrix a = X.values;  // working copy, R accumulates in the top triangle
    std::vector<double> qty(y.begin(), y.end());
    std::vector<double> v(n);

    for (std::size_t j = 0; j < m; ++j) {
        double* ajj = a.col(j) + j;
        const std::size_t len = n - j;
        double normx = std::sqrt(kern::sumsq(ajj, len));
        if (normx <= pivot_tol) {
            throw RankDeficient("ols_fit: design column '" + X.column_labels[j] +
                                "' is collinear at rank_tol");
        }
        double alpha = (ajj[0] > 0.0) ? -normx : normx;
        for (std::size_t i = 0; i < len; ++i) v[i] = ajj[i];
        v[0] -= alpha;
        const double vtv = kern::sumsq(v.data(), len);
        ajj[0] = alpha;
        if (vtv > 0.0) {
            for (std::size_t c = j + 1; c < m; ++c) {
                double* col = a.col(c) + j;
                const double w = 2.0 * kern::dot(v.data(), col, len) / vtv;
                kern::axpy(-w, v.data(), col, len);
            }
            double* yj = qty.data() + j;
            const double w = 2.0 * kern::dot(v.data(), yj, len) / vtv;
            kern::axpy(-w, v.data(), yj, len);
        }
    }

    OlsFit fit;
    fit.n = n;
    fit.m = m;

    // Back substitution R b = (Q'y)[0:m).
    fit.coefficients.assign(m, 0.0);
    for (std::size_t jj = m; jj-- > 0;) {
        double s = qty[jj];
        for (std::size_t c = jj + 1; c < m; ++c) s -= a(jj, c) * fit.coefficients[c];
        fit.coefficients[jj] = s / a(jj, jj);
    }

    // Residuals against the original design.
    fit.residuals.assign(y.begin(), y.end());
    for (std::size_t j = 0; j < m; ++j) {
        kern::axpy(-fit.coefficients[j], X.values.col(j), fit.residuals.data(), n);
    }
    fit.rss = kern::sumsq(fit.residuals.data(), n);
    fit.sigma2 = fit.rss / static_cast<double>(n - m);

    // (X'X)^-1 = R^-1 R^-T from the triangular factor.
    Matrix rinv(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        rinv(c, c) = 1.0 / a(c, c);
        for (std::size_t i = c; i-- > 0;) {
            double s = 0.0;
            for (std::size_t kcol = i + 1; kcol <= c; ++kcol) s += a(i, kcol) * rinv(kcol, c);
            rinv(i, c) = -s / a(i, i);
        }
    }
    fit.cov = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double s = 0.0;
            for (std::size_t c = j; c < m; ++c) s += rinv(i, c) * rinv(j, c);
            s *= fit.sigma2;
            fit.cov(i, j) = s;
            fit.cov(j, i) = s;
        }
    }
    fit.std_errors.resize(m);
    for (std::size_t i = 0; i < m; ++i) fit.std_errors[i] = std::sqrt(std::max(fit.cov(i, i), 0.0));

    return fit;
}

std::pair<DesignMatrix, std::vector<std::size_t>> prune_collinear(const DesignMatrix& X,
                                                                  double rank_tol) {
    const std::size_t n = X.n();
    const std::size_t m = X.m();
    const double tol = rank_tol * std::max(max_column_norm(X.values), 1e-300);

    std::vector<std::vector<double>> basis;  // orthonormal, spans kept columns
    std::vector<std::size_t> kept;
    std::vector<double> work(n);

    for (std::size_t j = 0; j < m; ++j) {
        const double* src = X.values.col(j);
        for (std::size_t i = 0; i < n; ++i) work[i] = src[i];
        // two MGS passes
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const double proj = kern::dot(q.data(), work.data(), n);
                kern::axpy(-proj, q.data(), work.data(), n);
            }
        }
        const double nrm = std::sqrt(kern::sumsq(work.data(), n));
        if (nrm > tol) {
            kern::scale(1.0 / nrm, work.data(), n);
            basis.push_back(work);
            kept.push_back(j);
        }
    }

    DesignMatrix out;
    out.values = Matrix(n, kept.size());
    out.column_labels.reserve(kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const double* src = X.values.col(kept[c]);
        double* dst = out.values.col(c);
        for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
        out.column_labels.push_back(X.column_labels[kept[c]]);
    }
    return {std::move(out), std::move(kept)};
}

WaldSingle wald_single(const OlsFit& fit, std::size_t index, double null_value) {
    if (index >= fit.m) throw Error("wald_single: index out of range");
    const double se = fit.std_errors[index];
    if (!(se > 0.0) || !std::isfinite(se)) {
        throw ZeroStandardError("wald_single: zero or non-finite standard error");
    }
    WaldSingle w;
    w.t = (fit.coefficients[index] - null_value) / se;
    w.f = w.t * w.t;
    return w;
}

}  // namespace urkit
