#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "urkit/matrix.hpp"

namespace urkit {

inline constexpr double kDefaultRankTol = 1e-10;

// Full least-squares output with classical (homoskedastic) inference.
struct OlsFit {
    std::vector<double> coefficients;  // length m
    std::vector<double> residuals;     // length n
    double rss = 0.0;
    double sigma2 = 0.0;               // rss / (n - m)
    std::vector<double> std_errors;    // sqrt(diag(cov))
    Matrix cov;                        // sigma2 * (X'X)^-1
    std::size_t n = 0;
    std::size_t m = 0;
};

// Householder-QR least squares. Throws RankDeficient when a pivot falls
// below rank_tol relative to the largest column norm, and
// InsufficientObservations when n <= m.
OlsFit ols_fit(std::span<const double> y, const DesignMatrix& X,
               double rank_tol = kDefaultRankTol);

// Drops columns that are linearly dependent on earlier ones (modified
// Gram-Schmidt with re-orthogonalization). Returns the pruned design and
// the surviving original column indices, in order.
std::pair<DesignMatrix, std::vector<std::size_t>> prune_collinear(
    const DesignMatrix& X, double rank_tol = kDefaultRankTol);

struct WaldSingle {
    double t;
    double f;  // = t^2
};

// t and F for the single restriction coefficients[index] == null_value.
WaldSingle wald_single(const OlsFit& fit, std::size_t index, double null_value);

}  // namespace urkit
