#ifndef LPTN_REVERSIBLE_JUMP_HPP
#define LPTN_REVERSIBLE_JUMP_HPP

#include "lptn/rwm.hpp"

namespace lptn {

// Two-model reversible jump for H0: beta_j = 0 against H1: beta_j free, with
// a uniform prior over the two models, so the visit-count ratio estimates the
// Bayes factor BF(H1 : H0) directly.
struct RjConfig {
    int iterations = 100000;
    int burn_in = 20000;
    std::uint64_t seed = 0;
    int tested_coefficient = 2;  // 1-based; intercept is 1, so valid values are 2..p
    RwmConfig within_model;      // proposal scales/adaptation template (full model)
    double jump_location = 0.0;  // proposal for the born coefficient
    double jump_scale = 1.0;
    double model_move_prob = 0.5;
};

struct BayesFactorResult {
    double bf = 0.0;
    double std_error = 0.0;
    long visits_h1 = 0;
    long visits_h0 = 0;
    double between_acceptance = 0.0;
};

BayesFactorResult bayes_factor_rj(const Dataset& data, const ErrorModel& model, PriorKind prior,
                                  const RjConfig& cfg);

// Pilot-based tuning: jump proposal centered at the full-model MAP of beta_j
// with its pilot posterior spread as scale.
RjConfig tuned_rj_config(const Dataset& data, const ErrorModel& model, PriorKind prior,
                         int iterations, int burn_in, int tested_coefficient,
                         std::uint64_t seed);

}  // namespace lptn

#endif
