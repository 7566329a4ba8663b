#ifndef LPTN_SIMSTUDY_HPP
#define LPTN_SIMSTUDY_HPP

#include <string>
#include <vector>

#include "lptn/estimators.hpp"
#include "lptn/rng.hpp"

namespace lptn {

// Contamination scenarios 0-4: errors drawn from
// alpha * N(0,1) + (1-alpha) * N(loc, 1), scaled by sigma; scenarios 3-4 turn
// each outlier row into a high-leverage point.
struct Scenario {
    int id = 0;
    double alpha = 1.0;
    double outlier_location = 0.0;
    bool leverage = false;

    static Scenario by_id(int id);
};

// Draws one synthetic response vector (and possibly leverage-modified design)
// on top of a fixed covariate template.
Dataset generate_replication(const Scenario& scenario, const Dataset& design,
                             const Eigen::VectorXd& true_beta, double true_sigma,
                             RngStream& rng);

struct ErrorMeasures {
    double m_beta = 0.0;   // sqrt of mean (1/n)(b-B)'X'X(b-B) across replications
    double m_sigma = 0.0;  // root mean squared sigma error
};

ErrorMeasures error_measures(const std::vector<Parameters>& estimates,
                             const Eigen::VectorXd& true_beta, double true_sigma,
                             const Dataset& design);

struct StudyRow {
    std::string estimator;
    int scenario = 0;
    Eigen::Index n = 0;
    double m_beta = 0.0;
    double m_sigma = 0.0;
    double premium_beta = 0.0;
    double premium_sigma = 0.0;
    double protection_beta = 0.0;   // zero in scenario 0
    double protection_sigma = 0.0;
    long replications = 0;
    long failures = 0;
};

struct StudyReport {
    std::vector<StudyRow> rows;
};

// Fills the premium (from scenario 0) and protection (vs the normal-model
// baseline per contaminated scenario) columns of raw measurement rows.
StudyReport premium_protection(std::vector<StudyRow> rows);

struct StudyConfig {
    std::vector<int> scenario_ids = {0, 1, 2, 3, 4};
    std::vector<ErrorModel> estimators;  // must include the normal baseline
    std::vector<Eigen::Index> n_values = {50, 100};
    long replications = 2000;
    std::uint64_t seed = 0;
    Eigen::VectorXd true_beta;  // defaults to the case-study setup when empty
    double true_sigma = 40.0;
};

// Full cross product of scenarios x estimators x sample sizes, MAP-with-flat-
// prior fits, deterministic given the seed. Covariates are drawn once per
// (scenario, n) and held fixed across replications.
StudyReport run_study(const StudyConfig& config);

// Case-study-style covariate template: intercept plus three centered
// predictors with spreads 60, 30 and 100.
Dataset case_study_design(Eigen::Index n, RngStream& rng);

Eigen::VectorXd case_study_beta();  // (508.88, 1, 1, 0.5)

}  // namespace lptn

#endif
