#include "lptn/lptn_distribution.hpp"

#include <cmath>
#include <sstream>

#include "lptn/errors.hpp"
#include "lptn/math.hpp"

namespace lptn {

LptnParams derive_params(double rho) {
    if (!(rho > lptn_rho_min && rho < 1.0)) {
        std::ostringstream msg;
        msg << "lptn: rho = " << rho << " outside the open interval (2*Phi(1)-1, 1) ~ (0.6827, 1)";
        throw input_error(msg.str());
    }
    LptnParams p;
    p.rho = rho;
    p.tau = norm_quantile(0.5 * (1.0 + rho));
    p.log_tau = std::log(p.tau);
    p.lambda = 2.0 / (1.0 - rho) * norm_pdf(p.tau) * p.tau * p.log_tau;
    p.log_phi_tau = norm_log_pdf(p.tau);
    p.log_log_tau = std::log(p.log_tau);
    p.tail_mass = 0.5 * (1.0 - rho);
    return p;
}

double lptn_log_pdf(double z, const LptnParams& p) {
    double az = std::fabs(z);
    if (az <= p.tau) return norm_log_pdf(z);
    // log phi(tau) + log tau - log|z| + (lambda+1)(log log tau - log log |z|),
    // evaluated in the log domain so |z| up to 1e12 and beyond stays finite
    double log_az = std::log(az);
    return p.log_phi_tau + p.log_tau - log_az +
           (p.lambda + 1.0) * (p.log_log_tau - std::log(log_az));
}

double lptn_pdf(double z, const LptnParams& p) {
    double az = std::fabs(z);
    if (az <= p.tau) return norm_pdf(z);
    return std::exp(lptn_log_pdf(z, p));
}

double lptn_cdf(double z, const LptnParams& p) {
    double az = std::fabs(z);
    if (az <= p.tau) return norm_cdf(z);
    // tail mass beyond x > tau: tail_mass * (log tau / log x)^lambda
    double beyond = p.tail_mass * std::exp(p.lambda * (p.log_log_tau - std::log(std::log(az))));
    return z > 0.0 ? 1.0 - beyond : beyond;
}

double lptn_quantile(double u, const LptnParams& p) {
    if (!(u > 0.0 && u < 1.0))
        throw input_error("lptn_quantile: probability must lie in (0, 1)");
    const double lower = p.tail_mass;          // (1-rho)/2
    const double upper = 1.0 - p.tail_mass;    // (1+rho)/2
    if (u >= lower && u <= upper) return norm_quantile(u);
    double beyond = u > upper ? 1.0 - u : u;
    // invert tail_mass (log tau / log x)^lambda = beyond
    double x = std::exp(p.log_tau * std::pow(p.tail_mass / beyond, 1.0 / p.lambda));
    return u > upper ? x : -x;
}

double lptn_score(double z, const LptnParams& p) {
    double az = std::fabs(z);
    if (az <= p.tau) return -z;
    double s = z > 0.0 ? 1.0 : -1.0;
    return -s / az * (1.0 + (p.lambda + 1.0) / std::log(az));
}

double outlyingness_normal(double z) {
    return std::erfc(std::fabs(z) * 0.70710678118654752440);
}

double outlyingness_lptn(double z, const LptnParams& p) {
    double az = std::fabs(z);
    if (az <= p.tau)
        return 2.0 * (norm_cdf(p.tau) - norm_cdf(az)) + 2.0 * p.tail_mass;
    return 2.0 * p.tail_mass * std::exp(p.lambda * (p.log_log_tau - std::log(std::log(az))));
}

}  // namespace lptn
