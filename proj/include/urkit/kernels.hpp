#pragma once

#include <cstddef>

// Dense vector kernels used by the least-squares and Monte Carlo layers.
// Scalar reference implementations always exist; an AVX2 variant is
// selected once at startup when the CPU supports it. Selection is fixed
// for the lifetime of the process, so results are reproducible within a
// machine regardless of thread count.

namespace urkit::kern {

enum class Isa { Scalar, Avx2 };

// ISA actually in use (after dispatch).
Isa active_isa();

// Pin the implementation, mainly for equivalence tests. Passing Avx2 on a
// CPU without AVX2 support falls back to Scalar.
void force_isa(Isa isa);

double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x *= alpha
void scale(double alpha, double* x, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace urkit::kern
