#ifndef LPTN_KERNELS_HPP
#define LPTN_KERNELS_HPP

#include <cstddef>

#include "lptn/lptn_distribution.hpp"

namespace lptn::kern {

// Hot inner loops of likelihood evaluation, shared by the samplers, the
// optimizer, and the simulation harness. Scalar reference implementations are
// always available; an AVX2 variant is selected at runtime on CPUs that
// support it. The variants are equivalence-tested against each other; they
// may differ in the last bits because of accumulation order.

// r[i] = y[i] - sum_j x[i + j*ld] * beta[j]   (column-major x, ld >= n)
using ResidualsFn = void (*)(const double* x, std::size_t n, std::size_t p, std::size_t ld,
                             const double* beta, const double* y, double* r);

// sum_i (r[i] * scale)^2
using SumSqFn = double (*)(const double* r, std::size_t n, double scale);

// sum_i log phi(r[i] * inv_sigma)
using NormalLogSumFn = double (*)(const double* r, std::size_t n, double inv_sigma);

// sum_i log f_lptn(r[i] * inv_sigma)
using LptnLogSumFn = double (*)(const double* r, std::size_t n, double inv_sigma,
                                const LptnParams& p);

struct Kernels {
    const char* name;
    ResidualsFn residuals;
    SumSqFn sum_sq;
    NormalLogSumFn normal_log_sum;
    LptnLogSumFn lptn_log_sum;
};

const Kernels& scalar_kernels();

// nullptr when this build or CPU has no AVX2 path
const Kernels* avx2_kernels();

// AVX2 when available unless overridden with LPTN_KERNELS=scalar in the
// environment; resolved once per process.
const Kernels& active_kernels();

}  // namespace lptn::kern

#endif
