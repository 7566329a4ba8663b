#include "lptn/rwm.hpp"

#include <cmath>

#include "lptn/errors.hpp"
#include "lptn/estimators.hpp"
#include "lptn/rng.hpp"

namespace lptn {

Chain rwm_sample(const LogPosteriorFn& target, const RwmConfig& cfg) {
    const Eigen::Index p = cfg.initial.beta.size();
    const Eigen::Index dim = p + 1;
    if (cfg.proposal_scales.size() != dim)
        throw input_error("rwm: proposal_scales must have p+1 entries");
    if ((cfg.proposal_scales.array() < 0.0).any())
        throw input_error("rwm: proposal scales must be nonnegative");
    if (cfg.burn_in >= cfg.iterations || cfg.burn_in < 0)
        throw input_error("rwm: need 0 <= burn_in < iterations");
    if (!(cfg.target_acceptance > 0.0 && cfg.target_acceptance < 1.0))
        throw input_error("rwm: target acceptance must lie in (0, 1)");
    if (!(cfg.initial.sigma > 0.0)) throw input_error("rwm: initial sigma must be positive");

    Eigen::VectorXd state(dim);
    state.head(p) = cfg.initial.beta;
    state(p) = std::log(cfg.initial.sigma);

    // target on (beta, log sigma): log posterior + log sigma Jacobian
    auto eval = [&](const Eigen::VectorXd& v) {
        return target(v.head(p), std::exp(v(p))) + v(p);
    };

    double current = eval(state);
    if (!std::isfinite(current))
        throw numeric_error("rwm: log posterior is not finite at the initial point");

    RngStream rng(cfg.seed);
    const int keep = cfg.iterations - cfg.burn_in;
    Chain chain;
    chain.draws.resize(keep, dim);
    chain.seed = cfg.seed;

    double log_scale_factor = 0.0;  // adapted global multiplier, frozen after burn-in
    long accepted_kept = 0;
    Eigen::VectorXd proposal(dim);

    for (int t = 0; t < cfg.iterations; ++t) {
        const double factor = std::exp(log_scale_factor);
        for (Eigen::Index j = 0; j < dim; ++j)
            proposal(j) = state(j) + factor * cfg.proposal_scales(j) * rng.normal();

        double cand = eval(proposal);
        bool accept = false;
        if (cand >= current) {
            accept = true;
        } else {
            accept = std::log(rng.uniform()) < cand - current;
        }
        if (accept) {
            state = proposal;
            current = cand;
        }

        if (t < cfg.burn_in) {
            if (cfg.adapt) {
                // Robbins-Monro on the log scale, vanishing step
                double step = 1.0 / std::pow(static_cast<double>(t + 1), 0.66);
                log_scale_factor += step * ((accept ? 1.0 : 0.0) - cfg.target_acceptance);
            }
        } else {
            int k = t - cfg.burn_in;
            chain.draws.row(k).head(p) = state.head(p);
            chain.draws(k, p) = std::exp(state(p));
            if (accept) ++accepted_kept;
        }
    }

    chain.acceptance_rate = keep > 0 ? static_cast<double>(accepted_kept) / keep : 0.0;
    return chain;
}

RwmConfig tuned_rwm_config(const Dataset& data, const ErrorModel& model, PriorKind prior,
                           int iterations, int burn_in, std::uint64_t seed) {
    RwmConfig cfg;
    cfg.iterations = iterations;
    cfg.burn_in = burn_in;
    cfg.seed = seed;

    MapResult map = map_estimate(data, model, prior);
    cfg.initial = map.params;

    const Eigen::Index p = data.p();
    const Eigen::Index dim = p + 1;

    // crude analytic spreads to drive the pilot: OLS standard errors for beta
    // and the asymptotic sd of log sigma
    OlsFit fit = ols(data);
    double sigma2 = fit.residual_ss / std::max<double>(1.0, static_cast<double>(data.n() - p));
    Eigen::VectorXd crude(dim);
    for (Eigen::Index j = 0; j < p; ++j)
        crude(j) = std::max(1e-8, std::sqrt(std::max(0.0, sigma2 * fit.xtx_inverse(j, j))));
    crude(p) = 1.0 / std::sqrt(2.0 * static_cast<double>(std::max<Eigen::Index>(1, data.n() - p)));

    const double mix = 2.38 / std::sqrt(static_cast<double>(dim));

    RwmConfig pilot;
    pilot.iterations = 4000;
    pilot.burn_in = 1000;
    pilot.initial = cfg.initial;
    pilot.proposal_scales = mix * crude;
    pilot.adapt = true;
    pilot.seed = RngStream(seed).substream(0x70696c6f).seed();  // decorrelated pilot stream
    auto posterior = [&](const Eigen::VectorXd& beta, double sigma) {
        return log_posterior({beta, sigma}, data, model, prior);
    };
    Chain warm = rwm_sample(posterior, pilot);

    Eigen::VectorXd spread(dim);
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::VectorXd col = warm.draws.col(j);
        double sd = std::sqrt((col.array() - col.mean()).square().mean());
        spread(j) = std::max(sd, 0.1 * crude(j));
    }
    Eigen::VectorXd log_sigma = warm.sigma_draws().array().log();
    double sd_ls = std::sqrt((log_sigma.array() - log_sigma.mean()).square().mean());
    spread(p) = std::max(sd_ls, 0.1 * crude(p));

    cfg.proposal_scales = mix * spread;
    return cfg;
}

Chain sample_posterior(const Dataset& data, const ErrorModel& model, PriorKind prior,
                       const RwmConfig& cfg) {
    auto check = validate_propriety(data.n(), data.p(), 0);
    if (!check.ok) throw input_error("sample_posterior: " + check.reason);
    auto posterior = [&](const Eigen::VectorXd& beta, double sigma) {
        return log_posterior({beta, sigma}, data, model, prior);
    };
    return rwm_sample(posterior, cfg);
}

double batch_means_se(const Eigen::VectorXd& draws) {
    const Eigen::Index n = draws.size();
    constexpr int n_batches = 50;
    if (n < 2 * n_batches) {
        // too short for batching; fall back to the iid formula
        double sd = std::sqrt((draws.array() - draws.mean()).square().sum() /
                              std::max<Eigen::Index>(1, n - 1));
        return sd / std::sqrt(static_cast<double>(n));
    }
    const Eigen::Index len = n / n_batches;
    Eigen::VectorXd means(n_batches);
    for (int b = 0; b < n_batches; ++b) means(b) = draws.segment(b * len, len).mean();
    double grand = means.mean();
    double var_batch = (means.array() - grand).square().sum() / (n_batches - 1);
    return std::sqrt(var_batch / n_batches);
}

}  // namespace lptn
