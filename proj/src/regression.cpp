#include "lptn/regression.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lptn/errors.hpp"
#include "lptn/kernels.hpp"
#include "lptn/math.hpp"

namespace lptn {

namespace {

// reused across evaluations; the likelihood is the MCMC hot path and must not
// allocate per call
thread_local std::vector<double> residual_scratch;

}  // namespace

double log_likelihood(const Parameters& theta, const Dataset& data, const ErrorModel& model) {
    if (theta.beta.size() != data.p()) {
        std::ostringstream msg;
        msg << "log_likelihood: beta has " << theta.beta.size() << " entries, design has "
            << data.p() << " columns";
        throw input_error(msg.str());
    }
    if (!(theta.sigma > 0.0)) throw input_error("log_likelihood: sigma must be positive");

    const auto n = static_cast<std::size_t>(data.n());
    const auto& k = kern::active_kernels();
    residual_scratch.resize(n);
    double* r = residual_scratch.data();
    k.residuals(data.x().data(), n, static_cast<std::size_t>(data.p()),
                static_cast<std::size_t>(data.x().rows()), theta.beta.data(), data.y().data(), r);

    const double inv_sigma = 1.0 / theta.sigma;
    const double n_log_sigma = static_cast<double>(n) * std::log(theta.sigma);
    switch (model.kind()) {
        case ErrorKind::Normal:
            return k.normal_log_sum(r, n, inv_sigma) - n_log_sigma;
        case ErrorKind::Lptn:
            return k.lptn_log_sum(r, n, inv_sigma, model.lptn_params()) - n_log_sigma;
        case ErrorKind::Student: {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += model.log_density(r[i] * inv_sigma);
            return acc - n_log_sigma;
        }
    }
    return 0.0;  // unreachable
}

double log_posterior(const Parameters& theta, const Dataset& data, const ErrorModel& model,
                     PriorKind prior) {
    if (!(theta.sigma > 0.0)) return -std::numeric_limits<double>::infinity();
    double ll = log_likelihood(theta, data, model);
    if (prior == PriorKind::ReciprocalSigma) ll -= std::log(theta.sigma);
    return ll;
}

double outlyingness(double z, const ErrorModel& model) {
    switch (model.kind()) {
        case ErrorKind::Normal:
            return outlyingness_normal(z);
        case ErrorKind::Lptn:
            return outlyingness_lptn(z, model.lptn_params());
        case ErrorKind::Student:
            throw input_error("outlyingness: Student error model is not supported");
    }
    return 0.0;  // unreachable
}

ProprietyCheck validate_propriety(Eigen::Index n, Eigen::Index p, int moment_order) {
    if (n < 1 || p < 1) return {false, "need n >= 1 and p >= 1"};
    if (moment_order < 0) return {false, "moment order must be nonnegative"};
    if (n <= p + 1) {
        std::ostringstream msg;
        msg << "posterior is improper: need n > p+1, got n = " << n << ", p = " << p;
        return {false, msg.str()};
    }
    if (n <= p + 1 + moment_order) {
        std::ostringstream msg;
        msg << "posterior moments of order " << moment_order << " need n > p+1+" << moment_order
            << " = " << p + 1 + moment_order << ", got n = " << n;
        return {false, msg.str()};
    }
    return {true, ""};
}

}  // namespace lptn
