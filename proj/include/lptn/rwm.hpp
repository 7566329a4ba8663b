#ifndef LPTN_RWM_HPP
#define LPTN_RWM_HPP

#include <cstdint>
#include <functional>

#include "lptn/regression.hpp"

namespace lptn {

// Log posterior evaluated at (beta, sigma). The sampler itself walks
// (beta, log sigma) and adds the +log sigma Jacobian internally.
using LogPosteriorFn = std::function<double(const Eigen::VectorXd& beta, double sigma)>;

struct RwmConfig {
    int iterations = 20000;
    int burn_in = 5000;
    Parameters initial;
    Eigen::VectorXd proposal_scales;  // p+1 entries, for (beta, log sigma)
    bool adapt = true;
    double target_acceptance = 0.234;
    std::uint64_t seed = 0;
};

// Ordered posterior draws (post burn-in) with acceptance bookkeeping. Column
// layout: beta_1 .. beta_p, sigma.
struct Chain {
    Eigen::MatrixXd draws;
    double acceptance_rate = 0.0;
    std::uint64_t seed = 0;

    Eigen::Index size() const { return draws.rows(); }
    Eigen::Index p() const { return draws.cols() - 1; }
    Eigen::VectorXd beta_draws(Eigen::Index j) const { return draws.col(j); }
    Eigen::VectorXd sigma_draws() const { return draws.col(draws.cols() - 1); }
    Parameters at(Eigen::Index t) const {
        return {draws.row(t).head(draws.cols() - 1).transpose(), draws(t, draws.cols() - 1)};
    }
};

// Random-walk Metropolis with independent Gaussian increments per coordinate
// of (beta, log sigma). When adapt is set, a global Robbins-Monro factor
// rescales the proposal during burn-in only, then freezes.
Chain rwm_sample(const LogPosteriorFn& target, const RwmConfig& cfg);

// Fills in the pieces of cfg the caller left empty: initial point at the MAP
// and proposal scales 2.38/sqrt(p+1) times a spread estimate from a short
// pilot run.
RwmConfig tuned_rwm_config(const Dataset& data, const ErrorModel& model, PriorKind prior,
                           int iterations, int burn_in, std::uint64_t seed);

// Posterior chain for a regression model (convenience wrapper).
Chain sample_posterior(const Dataset& data, const ErrorModel& model, PriorKind prior,
                       const RwmConfig& cfg);

// Monte Carlo standard error of the mean of a draw sequence, batch means with
// 50 batches.
double batch_means_se(const Eigen::VectorXd& draws);

}  // namespace lptn

#endif
