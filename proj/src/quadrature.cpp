#include "lptn/quadrature.hpp"

#include <cmath>

#include "lptn/errors.hpp"

namespace lptn {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a);
    double fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw input_error("gauss_hermite: need at least one node");
    // Jacobi matrix of the Hermite recurrence; eigenvalues are the nodes,
    // weights follow from the first eigenvector components.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double off = std::sqrt(0.5 * i);
        jacobi(i, i - 1) = off;
        jacobi(i - 1, i) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermiteRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(n);
    const double mu0 = std::sqrt(M_PI);  // integral of exp(-t^2)
    for (int i = 0; i < n; ++i) {
        double v0 = solver.eigenvectors()(0, i);
        rule.weights(i) = mu0 * v0 * v0;
    }
    return rule;
}

double GaussHermiteRule::integrate_normal(const std::function<double(double)>& g) const {
    constexpr double inv_sqrt_pi = 0.56418958354775628695;
    constexpr double sqrt_two = 1.41421356237309504880;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i)
        acc += weights(i) * g(sqrt_two * nodes(i));
    return inv_sqrt_pi * acc;
}

}  // namespace lptn
