#ifndef LPTN_QUADRATURE_HPP
#define LPTN_QUADRATURE_HPP

#include <Eigen/Dense>
#include <functional>

namespace lptn {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

struct GaussHermiteRule {
    Eigen::VectorXd nodes;    // abscissae for weight exp(-t^2)
    Eigen::VectorXd weights;

    // integral of g against the standard normal density:
    // (1/sqrt(pi)) sum_i w_i g(sqrt(2) t_i)
    double integrate_normal(const std::function<double(double)>& g) const;
};

// Golub-Welsch nodes/weights for the physicists' Hermite weight exp(-t^2).
GaussHermiteRule gauss_hermite(int n);

}  // namespace lptn

#endif
