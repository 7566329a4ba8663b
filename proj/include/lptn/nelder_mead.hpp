#ifndef LPTN_NELDER_MEAD_HPP
#define LPTN_NELDER_MEAD_HPP

#include <Eigen/Dense>
#include <functional>

namespace lptn {

struct NmConfig {
    int max_evals = 50000;
    double x_tol = 1e-8;
    double f_tol = 1e-10;
    int restarts = 3;
};

struct NmResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evals = 0;
    bool converged = false;
};

// Maximizes f by Nelder-Mead on the negated objective. Restarts rebuild the
// simplex around the incumbent with re-inflated steps; the best value wins,
// ties going to the earliest restart.
NmResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& init, const Eigen::VectorXd& steps,
                              const NmConfig& cfg = {});

}  // namespace lptn

#endif
