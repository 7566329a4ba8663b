#ifndef LPTN_DISTRIBUTION_HPP
#define LPTN_DISTRIBUTION_HPP

#include "lptn/rng.hpp"

namespace lptn {

// Log-Pareto-tailed normal: standard normal density on the central region of
// mass rho, spliced at |z| = tau to log-Pareto tails
//
//   f(z) = phi(tau) * (tau/|z|) * (log tau / log |z|)^(lambda+1),  |z| > tau,
//
// with tau and lambda pinned by continuity and unit total mass:
//
//   tau    = Phi^-1((1+rho)/2)
//   lambda = 2 (1-rho)^-1 phi(tau) tau log(tau).
//
// Each tail then carries mass (1-rho)/2 = phi(tau) tau log(tau) / lambda.
struct LptnParams {
    double rho;
    double tau;
    double lambda;

    // cached pieces of the tail branch
    double log_phi_tau;
    double log_tau;
    double log_log_tau;
    double tail_mass;  // (1-rho)/2
};

// smallest admissible rho: 2*Phi(1) - 1
inline constexpr double lptn_rho_min = 0.68268949213708585;

LptnParams derive_params(double rho);

double lptn_pdf(double z, const LptnParams& p);
double lptn_log_pdf(double z, const LptnParams& p);
double lptn_cdf(double z, const LptnParams& p);

// Inverse CDF. The log-Pareto tails grow so fast that extreme quantiles can
// exceed double range at small rho (log of the 0.001-quantile is ~950 for
// rho = 0.8); those saturate to +-infinity.
double lptn_quantile(double u, const LptnParams& p);

inline double lptn_sample(const LptnParams& p, RngStream& rng) {
    return lptn_quantile(rng.uniform(), p);
}

// d/dz log f(z); the two one-sided values disagree at |z| = tau, where the
// central one is returned.
double lptn_score(double z, const LptnParams& p);

// P(|eps| > |z|) for a fresh standardized error
double outlyingness_normal(double z);
double outlyingness_lptn(double z, const LptnParams& p);

}  // namespace lptn

#endif
