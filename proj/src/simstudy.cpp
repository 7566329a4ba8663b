#include "lptn/simstudy.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "lptn/errors.hpp"

namespace lptn {

Scenario Scenario::by_id(int id) {
    switch (id) {
        case 0: return {0, 1.00, 0.0, false};
        case 1: return {1, 0.95, 7.0, false};
        case 2: return {2, 0.90, 7.0, false};
        case 3: return {3, 0.95, 3.0, true};
        case 4: return {4, 0.90, 3.0, true};
        default: throw input_error("scenario id must be 0..4");
    }
}

Dataset generate_replication(const Scenario& scenario, const Dataset& design,
                             const Eigen::VectorXd& true_beta, double true_sigma,
                             RngStream& rng) {
    if (true_beta.size() != design.p())
        throw input_error("generate_replication: true beta does not match the design");
    const Eigen::Index n = design.n();
    const Eigen::Index p = design.p();
    Eigen::MatrixXd x = design.x();
    Eigen::VectorXd column_max(p);
    if (scenario.leverage)
        for (Eigen::Index j = 1; j < p; ++j) column_max(j) = design.x().col(j).maxCoeff();

    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        bool outlier = scenario.alpha < 1.0 && rng.uniform() < 1.0 - scenario.alpha;
        double eps = rng.normal() + (outlier ? scenario.outlier_location : 0.0);
        if (outlier && scenario.leverage && p > 1) {
            // one randomly chosen covariate jumps to 1.5x its column maximum
            auto j = static_cast<Eigen::Index>(1 + rng.next_u64() % static_cast<std::uint64_t>(p - 1));
            x(i, j) = 1.5 * column_max(j);
        }
        y(i) = x.row(i).dot(true_beta) + true_sigma * eps;
    }
    return Dataset(std::move(x), std::move(y));
}

ErrorMeasures error_measures(const std::vector<Parameters>& estimates,
                             const Eigen::VectorXd& true_beta, double true_sigma,
                             const Dataset& design) {
    if (estimates.empty()) throw input_error("error_measures: no estimates");
    Eigen::MatrixXd xtx = design.x().transpose() * design.x();
    const double inv_n = 1.0 / static_cast<double>(design.n());
    double beta_acc = 0.0;
    double sigma_acc = 0.0;
    for (const Parameters& est : estimates) {
        Eigen::VectorXd d = est.beta - true_beta;
        beta_acc += inv_n * d.dot(xtx * d);
        double ds = est.sigma - true_sigma;
        sigma_acc += ds * ds;
    }
    const auto m = static_cast<double>(estimates.size());
    return {std::sqrt(beta_acc / m), std::sqrt(sigma_acc / m)};
}

StudyReport premium_protection(std::vector<StudyRow> rows) {
    // baselines: normal-model measure per (scenario, n)
    std::map<std::pair<int, Eigen::Index>, const StudyRow*> baseline;
    for (const StudyRow& row : rows)
        if (row.estimator == "normal") baseline[{row.scenario, row.n}] = &row;

    for (StudyRow& row : rows) {
        auto base0 = baseline.find({0, row.n});
        auto base_s = baseline.find({row.scenario, row.n});
        if (base_s == baseline.end())
            throw input_error("premium_protection: missing normal baseline for scenario " +
                              std::to_string(row.scenario));
        // premium needs the clean-data (scenario 0) rows of both models
        const StudyRow* own0 = nullptr;
        for (const StudyRow& cand : rows)
            if (cand.estimator == row.estimator && cand.scenario == 0 && cand.n == row.n)
                own0 = &cand;
        if (own0 == nullptr || base0 == baseline.end())
            throw input_error("premium_protection: missing scenario-0 rows for estimator " +
                              row.estimator);
        row.premium_beta = (own0->m_beta - base0->second->m_beta) / base0->second->m_beta;
        row.premium_sigma = (own0->m_sigma - base0->second->m_sigma) / base0->second->m_sigma;
        if (row.scenario != 0) {
            row.protection_beta = (base_s->second->m_beta - row.m_beta) / base_s->second->m_beta;
            row.protection_sigma =
                (base_s->second->m_sigma - row.m_sigma) / base_s->second->m_sigma;
        } else {
            row.protection_beta = 0.0;
            row.protection_sigma = 0.0;
        }
    }
    return {std::move(rows)};
}

Dataset case_study_design(Eigen::Index n, RngStream& rng) {
    Eigen::MatrixXd x(n, 4);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = 60.0 * rng.normal();   // sector value around its mean
        x(i, 2) = 30.0 * rng.normal();   // living area
        x(i, 3) = 100.0 * rng.normal();  // land area
    }
    return Dataset(std::move(x), Eigen::VectorXd::Zero(n));
}

Eigen::VectorXd case_study_beta() {
    Eigen::VectorXd beta(4);
    beta << 508.88, 1.0, 1.0, 0.5;
    return beta;
}

StudyReport run_study(const StudyConfig& config) {
    if (config.estimators.empty()) throw input_error("run_study: no estimators");
    bool has_baseline = false;
    for (const ErrorModel& m : config.estimators)
        if (m.kind() == ErrorKind::Normal) has_baseline = true;
    if (!has_baseline) throw input_error("run_study: the normal baseline estimator is required");
    if (config.replications < 1) throw input_error("run_study: need at least one replication");

    RngStream master(config.seed);
    std::vector<StudyRow> rows;

    for (Eigen::Index n : config.n_values) {
        for (std::size_t s = 0; s < config.scenario_ids.size(); ++s) {
            Scenario scenario = Scenario::by_id(config.scenario_ids[s]);
            RngStream scenario_stream =
                master.substream(static_cast<std::uint64_t>(n) * 131 + scenario.id);

            Eigen::VectorXd true_beta =
                config.true_beta.size() > 0 ? config.true_beta : case_study_beta();
            Dataset design = case_study_design(n, scenario_stream);
            if (true_beta.size() != design.p())
                throw input_error("run_study: true beta must have 4 entries");

            std::vector<std::vector<Parameters>> fits(config.estimators.size());
            std::vector<long> failures(config.estimators.size(), 0);
            for (long r = 0; r < config.replications; ++r) {
                RngStream rep_stream = scenario_stream.substream(static_cast<std::uint64_t>(r) + 1);
                Dataset replication =
                    generate_replication(scenario, design, true_beta, config.true_sigma, rep_stream);
                for (std::size_t e = 0; e < config.estimators.size(); ++e) {
                    try {
                        // study estimation contract: MAP with flat prior (= MLE)
                        MapResult fit = mle_estimate(replication, config.estimators[e]);
                        fits[e].push_back(fit.params);
                    } catch (const std::exception&) {
                        ++failures[e];
                    }
                }
            }

            for (std::size_t e = 0; e < config.estimators.size(); ++e) {
                StudyRow row;
                row.estimator = config.estimators[e].label();
                row.scenario = scenario.id;
                row.n = n;
                if (fits[e].empty())
                    throw numeric_error("run_study: every replication failed for " +
                                        row.estimator);
                ErrorMeasures m =
                    error_measures(fits[e], true_beta, config.true_sigma, design);
                row.m_beta = m.m_beta;
                row.m_sigma = m.m_sigma;
                row.replications = static_cast<long>(fits[e].size());
                row.failures = failures[e];
                rows.push_back(std::move(row));
            }
        }
    }
    return premium_protection(std::move(rows));
}

}  // namespace lptn
