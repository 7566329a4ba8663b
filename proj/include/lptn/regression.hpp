#ifndef LPTN_REGRESSION_HPP
#define LPTN_REGRESSION_HPP

#include <string>

#include "lptn/dataset.hpp"
#include "lptn/error_model.hpp"

namespace lptn {

struct Parameters {
    Eigen::VectorXd beta;
    double sigma = 1.0;
};

// sum_i [ log f((y_i - x_i' beta)/sigma) - log sigma ]
double log_likelihood(const Parameters& theta, const Dataset& data, const ErrorModel& model);

// log_likelihood plus the log prior (-log sigma or 0); -inf for sigma <= 0,
// which is the rejection sentinel every sampler and optimizer relies on.
double log_posterior(const Parameters& theta, const Dataset& data, const ErrorModel& model,
                     PriorKind prior);

// P(|fresh standardized error| > |z|) under the model; Student unsupported.
double outlyingness(double z, const ErrorModel& model);

struct ProprietyCheck {
    bool ok;
    std::string reason;  // empty when ok
};

// Posterior propriety needs n > p+1; existence of moments up to moment_order
// additionally needs n > p + 1 + moment_order.
ProprietyCheck validate_propriety(Eigen::Index n, Eigen::Index p, int moment_order);

}  // namespace lptn

#endif
