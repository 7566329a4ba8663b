#include "lptn/reversible_jump.hpp"

#include <cmath>

#include "lptn/errors.hpp"
#include "lptn/estimators.hpp"
#include "lptn/math.hpp"
#include "lptn/rng.hpp"

namespace lptn {

BayesFactorResult bayes_factor_rj(const Dataset& data, const ErrorModel& model, PriorKind prior,
                                  const RjConfig& cfg) {
    const Eigen::Index p = data.p();
    if (cfg.tested_coefficient < 2 || cfg.tested_coefficient > p)
        throw input_error("bayes_factor_rj: tested coefficient must lie in [2, p]");
    auto check = validate_propriety(data.n(), p, 0);
    if (!check.ok) throw input_error("bayes_factor_rj: " + check.reason);
    if (cfg.within_model.proposal_scales.size() != p + 1)
        throw input_error("bayes_factor_rj: within-model template needs p+1 proposal scales");
    if (!(cfg.jump_scale > 0.0)) throw input_error("bayes_factor_rj: jump scale must be positive");
    if (cfg.burn_in >= cfg.iterations || cfg.burn_in < 0)
        throw input_error("bayes_factor_rj: need 0 <= burn_in < iterations");

    const Eigen::Index j = cfg.tested_coefficient - 1;  // column index of beta_j

    auto posterior = [&](const Eigen::VectorXd& beta, double log_sigma) {
        return log_posterior({beta, std::exp(log_sigma)}, data, model, prior) + log_sigma;
    };
    auto jump_log_pdf = [&](double v) {
        double z = (v - cfg.jump_location) / cfg.jump_scale;
        return norm_log_pdf(z) - std::log(cfg.jump_scale);
    };

    Eigen::VectorXd beta = cfg.within_model.initial.beta;
    double log_sigma = std::log(cfg.within_model.initial.sigma);
    bool in_h1 = true;
    double current = posterior(beta, log_sigma);
    if (!std::isfinite(current))
        throw numeric_error("bayes_factor_rj: log posterior is not finite at the initial point");

    RngStream rng(cfg.seed);
    double log_factor_h1 = 0.0;  // per-model Robbins-Monro factors
    double log_factor_h0 = 0.0;
    long visits_h1 = 0;
    long visits_h0 = 0;
    long between_attempts = 0;
    long between_accepts = 0;
    const int keep = cfg.iterations - cfg.burn_in;
    Eigen::VectorXd indicator(keep);
    Eigen::VectorXd proposal(p);

    for (int t = 0; t < cfg.iterations; ++t) {
        if (rng.uniform() < cfg.model_move_prob) {
            // birth / death of beta_j
            ++between_attempts;
            if (!in_h1) {
                double v = cfg.jump_location + cfg.jump_scale * rng.normal();
                proposal = beta;
                proposal(j) = v;
                double cand = posterior(proposal, log_sigma);
                if (std::log(rng.uniform()) < cand - current - jump_log_pdf(v)) {
                    beta = proposal;
                    current = cand;
                    in_h1 = true;
                    ++between_accepts;
                }
            } else {
                proposal = beta;
                proposal(j) = 0.0;
                double cand = posterior(proposal, log_sigma);
                if (std::log(rng.uniform()) < cand - current + jump_log_pdf(beta(j))) {
                    beta = proposal;
                    current = cand;
                    in_h1 = false;
                    ++between_accepts;
                }
            }
        } else {
            // one RWM step on the active coordinates
            double& log_factor = in_h1 ? log_factor_h1 : log_factor_h0;
            double factor = std::exp(log_factor);
            proposal = beta;
            for (Eigen::Index c = 0; c < p; ++c) {
                if (!in_h1 && c == j) continue;
                proposal(c) = beta(c) + factor * cfg.within_model.proposal_scales(c) * rng.normal();
            }
            double ls_prop =
                log_sigma + factor * cfg.within_model.proposal_scales(p) * rng.normal();
            double cand = posterior(proposal, ls_prop);
            bool accept = std::log(rng.uniform()) < cand - current;
            if (accept) {
                beta = proposal;
                log_sigma = ls_prop;
                current = cand;
            }
            if (t < cfg.burn_in && cfg.within_model.adapt) {
                double step = 1.0 / std::pow(static_cast<double>(t + 1), 0.66);
                log_factor +=
                    step * ((accept ? 1.0 : 0.0) - cfg.within_model.target_acceptance);
            }
        }

        if (t >= cfg.burn_in) {
            int k = t - cfg.burn_in;
            indicator(k) = in_h1 ? 1.0 : 0.0;
            if (in_h1)
                ++visits_h1;
            else
                ++visits_h0;
        }
    }

    if (visits_h0 == 0 || visits_h1 == 0)
        throw numeric_error(
            "bayes_factor_rj: chain never visited one of the models; retune the jump proposal "
            "(location/scale) or lengthen the run");

    BayesFactorResult out;
    double p_hat = static_cast<double>(visits_h1) / keep;
    out.bf = p_hat / (1.0 - p_hat);
    // delta method through odds(p) = p/(1-p)
    out.std_error = batch_means_se(indicator) / ((1.0 - p_hat) * (1.0 - p_hat));
    out.visits_h1 = visits_h1;
    out.visits_h0 = visits_h0;
    out.between_acceptance =
        between_attempts > 0 ? static_cast<double>(between_accepts) / between_attempts : 0.0;
    return out;
}

RjConfig tuned_rj_config(const Dataset& data, const ErrorModel& model, PriorKind prior,
                         int iterations, int burn_in, int tested_coefficient,
                         std::uint64_t seed) {
    RjConfig cfg;
    cfg.iterations = iterations;
    cfg.burn_in = burn_in;
    cfg.seed = seed;
    cfg.tested_coefficient = tested_coefficient;
    cfg.within_model =
        tuned_rwm_config(data, model, prior, iterations, burn_in, RngStream(seed).substream(1).seed());
    cfg.within_model.seed = seed;

    // pilot chain pins the born-coefficient proposal
    RwmConfig pilot = cfg.within_model;
    pilot.iterations = 4000;
    pilot.burn_in = 1000;
    pilot.seed = RngStream(seed).substream(2).seed();
    Chain warm = sample_posterior(data, model, prior, pilot);
    const Eigen::Index j = tested_coefficient - 1;
    Eigen::VectorXd col = warm.draws.col(j);
    cfg.jump_location = col.mean();
    double sd = std::sqrt((col.array() - col.mean()).square().mean());
    cfg.jump_scale = std::max(sd, 1e-8);
    return cfg;
}

}  // namespace lptn
