#ifndef LPTN_ROBUSTNESS_HPP
#define LPTN_ROBUSTNESS_HPP

#include <vector>

#include "lptn/rwm.hpp"

namespace lptn {

struct BreakdownCheck {
    bool ok = false;
    // #nonoutliers - #outliers - 2(p - 1/2); nonnegative iff the whole-
    // robustness outlier budget holds
    double margin = 0.0;
};

BreakdownCheck breakdown_check(Eigen::Index n, Eigen::Index p, Eigen::Index ell);

// One observation slid along y = offset + slope * omega.
struct OutlierPath {
    Eigen::Index index = 0;
    double offset = 0.0;
    double slope = 1.0;           // nonzero
    std::vector<double> omegas;   // strictly increasing, positive

    void validate(Eigen::Index n) const;
};

struct RobustnessCurve {
    std::vector<double> omegas;
    Eigen::MatrixXd full_means;       // one row per omega: beta_1..beta_p, sigma
    Eigen::VectorXd reference_means;  // nonoutlier-only fit
    Eigen::VectorXd reference_sds;
};

// Refits the posterior for every omega on the path (warm-starting each MAP at
// the previous one) and once on the nonoutlier subset.
RobustnessCurve robustness_curve(const Dataset& data, const ErrorModel& model, PriorKind prior,
                                 const OutlierPath& path, int iterations, int burn_in,
                                 std::uint64_t seed);

// --- KL efficiency numerics (sigma* analysis) ---

// J(eta) = integral of log f(z*eta) against phi(z) dz + log eta, through the
// exact split: closed-form normal core plus the smooth tail excess
//   2 * integral_{tau/eta}^inf [log f - log phi](z eta) phi(z) dz
// handled by adaptive Simpson.
double kl_eta_objective(double eta, const LptnParams& p);

// Whole-line Gauss-Hermite evaluation of the same objective; the kink at
// |z| = tau/eta limits it to ~1e-3 accuracy, kept as a cross-check.
double kl_eta_objective_gauss_hermite(double eta, const LptnParams& p, int nodes = 201);

// integral of f'(z eta)/f(z eta) phi(z) dz; zero for all eta by symmetry
double kl_beta_stationarity(double eta, const LptnParams& p);

// integral of z eta f'(z eta)/f(z eta) phi(z) dz; equals -1 at the maximizer
double kl_eta_stationarity(double eta, const LptnParams& p);

// sigma*/sigma_0 = 1/eta*, golden-section search on log eta in [log 0.5, log 2]
double kl_sigma_star(double rho);

// --- Brute-force marginal probe (small instances only) ---

struct MarginalQuadratureOptions {
    double box_halfwidth_sds = 15.0;  // beta box half-width in posterior sds
    double log_sigma_halfwidth = 5.0;
    double rel_tol = 2e-4;
    int max_points_per_dim = 801;
};

// log m(y) by composite-Simpson quadrature over (beta, log sigma), restricted
// to n <= 6 and p <= 2 where this is affordable.
double log_marginal_quadrature(const Dataset& data, const ErrorModel& model, PriorKind prior,
                               const MarginalQuadratureOptions& opts = {});

struct MarginalRatioProbe {
    double ratio = 0.0;
    double log_ratio = 0.0;  // log m(y_n) - log f(y_outlier) - log m(y_k)
};

// m(y_n) / (f(y_{i*}) m(y_k)) with y_{i*} = offset + slope * omega; tends to
// one as omega grows iff the model is wholly robust.
MarginalRatioProbe marginal_ratio_probe(const Dataset& data, const ErrorModel& model,
                                        PriorKind prior, const OutlierPath& path, double omega,
                                        const MarginalQuadratureOptions& opts = {});

}  // namespace lptn

#endif
