#include "urkit/kernels.hpp"

namespace urkit::kern {

namespace {

using DotFn = double (*)(const double*, const double*, std::size_t);
using SumsqFn = double (*)(const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);
using ScaleFn = void (*)(double, double*, std::size_t);

struct Table {
    Isa isa;
    DotFn dot;
    SumsqFn sumsq;
    AxpyFn axpy;
    ScaleFn scale;
};

constexpr Table kScalar{Isa::Scalar, scalar::dot, scalar::sumsq, scalar::axpy, scalar::scale};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{Isa::Avx2, avx2::dot, avx2::sumsq, avx2::axpy, avx2::scale};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Table detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return kAvx2;
#endif
    return kScalar;
}

Table g_table = detect();

}  // namespace

Isa active_isa() { return g_table.isa; }

void force_isa(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::Avx2 && cpu_has_avx2()) {
        g_table = kAvx2;
        return;
    }
#else
    (void)isa;
#endif
    g_table = kScalar;
}

double dot(const double* a, const double* b, std::size_t n) { return g_table.dot(a, b, n); }
double sumsq(const double* a, std::size_t n) { return g_table.sumsq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { g_table.axpy(alpha, x, y, n); }
void scale(double alpha, double* x, std::size_t n) { g_table.scale(alpha, x, n); }

}  // namespace urkit::kern
