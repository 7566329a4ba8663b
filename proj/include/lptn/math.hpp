#ifndef LPTN_MATH_HPP
#define LPTN_MATH_HPP

#include <cmath>

namespace lptn {

inline constexpr double half_log_two_pi = 0.91893853320467274178;

inline double norm_pdf(double z) {
    return 0.39894228040143267794 * std::exp(-0.5 * z * z);
}

inline double norm_log_pdf(double z) {
    return -half_log_two_pi - 0.5 * z * z;
}

inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

// Inverse standard-normal CDF. Rational approximation (Acklam) refined by one
// Newton step on the erfc-based CDF; absolute error well below 1e-10 over (0,1).
double norm_quantile(double u);

// Regularized lower incomplete gamma P(a, x) via series / continued fraction.
double gamma_p(double a, double x);

// CDF of an Inverse-Gamma(shape, rate) at x > 0.
inline double inv_gamma_cdf(double x, double shape, double rate) {
    if (x <= 0.0) return 0.0;
    return 1.0 - gamma_p(shape, rate / x);
}

}  // namespace lptn

#endif
