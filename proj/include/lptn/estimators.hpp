#ifndef LPTN_ESTIMATORS_HPP
#define LPTN_ESTIMATORS_HPP

#include <string>

#include "lptn/nelder_mead.hpp"
#include "lptn/regression.hpp"

namespace lptn {

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    double residual_ss = 0.0;
    Eigen::MatrixXd xtx_inverse;
};

// Least squares through a column-pivoted QR of X; throws numeric_error when
// X'X is singular.
OlsFit ols(const Dataset& data);

struct MapResult {
    Parameters params;
    double value = 0.0;  // log posterior (or log likelihood for MLE) at params
    bool converged = true;
    int evals = 0;
};

// Posterior mode over (beta, log sigma) by Nelder-Mead, optimized on centered
// covariates and reported on the original scale. Starts from (OLS beta, OLS
// residual scale) unless init is given.
MapResult map_estimate(const Dataset& data, const ErrorModel& model, PriorKind prior,
                       const NmConfig& cfg = {}, const Parameters* init = nullptr);

// map_estimate with a flat prior
MapResult mle_estimate(const Dataset& data, const ErrorModel& model, const NmConfig& cfg = {},
                       const Parameters* init = nullptr);

// Closed-form Normal-model posterior under pi(beta, sigma) ~ 1/sigma:
//   beta | sigma, y ~ N(beta_mean, sigma^2 * xtx_inverse)
//   sigma^2 | y     ~ Inverse-Gamma(ig_shape, ig_rate)
struct ConjugatePosterior {
    Eigen::VectorXd beta_mean;
    Eigen::MatrixXd xtx_inverse;
    double ig_shape = 0.0;  // (n - p) / 2
    double ig_rate = 0.0;   // ||y - y_hat||^2 / 2

    double sigma2_mean() const { return ig_rate / (ig_shape - 1.0); }
    double beta_marginal_var(Eigen::Index j) const { return sigma2_mean() * xtx_inverse(j, j); }
    double sigma2_cdf(double s2) const;
};

ConjugatePosterior conjugate_posterior(const Dataset& data);

}  // namespace lptn

#endif
