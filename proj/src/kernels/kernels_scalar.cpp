#include <cmath>

#include "lptn/kernels.hpp"
#include "lptn/math.hpp"

namespace lptn::kern {

namespace {

void residuals_scalar(const double* x, std::size_t n, std::size_t p, std::size_t ld,
                      const double* beta, const double* y, double* r) {
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i];
    for (std::size_t j = 0; j < p; ++j) {
        const double* col = x + j * ld;
        const double bj = beta[j];
        for (std::size_t i = 0; i < n; ++i) r[i] -= bj * col[i];
    }
}

double sum_sq_scalar(const double* r, std::size_t n, double scale) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = r[i] * scale;
        acc += z * z;
    }
    return acc;
}

double normal_log_sum_scalar(const double* r, std::size_t n, double inv_sigma) {
    double ss = sum_sq_scalar(r, n, inv_sigma);
    return -0.5 * ss - static_cast<double>(n) * half_log_two_pi;
}

double lptn_log_sum_scalar(const double* r, std::size_t n, double inv_sigma,
                           const LptnParams& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = r[i] * inv_sigma;
        double az = std::fabs(z);
        if (az <= p.tau) {
            acc += -half_log_two_pi - 0.5 * z * z;
        } else {
            double log_az = std::log(az);
            acc += p.log_phi_tau + p.log_tau - log_az +
                   (p.lambda + 1.0) * (p.log_log_tau - std::log(log_az));
        }
    }
    return acc;
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{"scalar", residuals_scalar, sum_sq_scalar, normal_log_sum_scalar,
                           lptn_log_sum_scalar};
    return k;
}

}  // namespace lptn::kern
