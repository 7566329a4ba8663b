#ifndef LPTN_SUMMARIES_HPP
#define LPTN_SUMMARIES_HPP

#include <vector>

#include "lptn/rwm.hpp"

namespace lptn {

struct ParameterSummary {
    double mean = 0.0;
    double median = 0.0;
    double hpd_lower = 0.0;
    double hpd_upper = 0.0;
};

struct FitSummary {
    std::vector<ParameterSummary> params;  // beta_1..beta_p then sigma
    double level = 0.0;
    double acceptance_rate = 0.0;
};

// Shortest window over sorted draws containing ceil(level * N) consecutive
// order statistics; ties go to the lower start index.
std::pair<double, double> hpd_interval(Eigen::VectorXd draws, double level);

FitSummary summarize(const Chain& chain, double level);

struct Prediction {
    double median = 0.0;
    double hpd_lower = 0.0;
    double hpd_upper = 0.0;
    Eigen::VectorXd draws;
    // no mean on purpose: it does not exist under LPTN errors
};

// One predictive draw x_new' beta + sigma * eps per retained chain draw.
Prediction predict(const Chain& chain, const Eigen::VectorXd& x_new, const ErrorModel& model,
                   double level, std::uint64_t seed);

struct ObservationDiagnostic {
    double fitted_mean = 0.0;
    double error_mean = 0.0;
    double z_mean = 0.0;
    double outlyingness_mean = 0.0;
    bool flagged = false;
};

struct OutlierReport {
    std::vector<ObservationDiagnostic> rows;
    double threshold = 0.0;
};

// Per-draw z_i and outlyingness averaged over the chain; flags observations
// whose estimated outlyingness falls below the threshold. Threshold must lie
// in [0.001, 0.05].
OutlierReport outlier_report(const Chain& chain, const Dataset& data, const ErrorModel& model,
                             double threshold);

}  // namespace lptn

#endif
