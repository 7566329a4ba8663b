#include "lptn/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lptn/errors.hpp"

namespace lptn {

namespace {

struct Simplex {
    std::vector<Eigen::VectorXd> x;
    std::vector<double> f;  // negated objective, minimized

    void sort() {
        const auto d = x.size();
        std::vector<std::size_t> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        std::vector<Eigen::VectorXd> x2(d);
        std::vector<double> f2(d);
        for (std::size_t k = 0; k < d; ++k) {
            x2[k] = x[idx[k]];
            f2[k] = f[idx[k]];
        }
        x.swap(x2);
        f.swap(f2);
    }
};

}  // namespace

NmResult nelder_mead_maximize(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& init, const Eigen::VectorXd& steps,
                              const NmConfig& cfg) {
    if (steps.size() != init.size())
        throw input_error("nelder_mead: init and steps must have the same length");
    if (!(cfg.x_tol > 0.0) || !(cfg.f_tol > 0.0))
        throw input_error("nelder_mead: tolerances must be positive");

    const Eigen::Index dim = init.size();
    int evals = 0;
    auto neg = [&](const Eigen::VectorXd& v) {
        ++evals;
        return -f(v);
    };

    constexpr double alpha = 1.0;  // reflection
    constexpr double gamma = 2.0;  // expansion
    constexpr double beta = 0.5;   // contraction
    constexpr double delta = 0.5;  // shrink

    Eigen::VectorXd best = init;
    double fbest = neg(init);
    bool converged = false;

    for (int round = 0; round <= cfg.restarts; ++round) {
        // simplex around the incumbent; later rounds re-inflate the steps
        double inflate = round == 0 ? 1.0 : 2.0 * round;
        Simplex s;
        s.x.assign(dim + 1, best);
        s.f.assign(dim + 1, 0.0);
        s.f[0] = fbest;
        for (Eigen::Index j = 0; j < dim; ++j) {
            s.x[j + 1](j) += inflate * steps(j);
            s.f[j + 1] = neg(s.x[j + 1]);
        }

        while (evals < cfg.max_evals) {
            s.sort();
            double fspread = s.f[dim] - s.f[0];
            double xspread = 0.0;
            for (Eigen::Index j = 1; j <= dim; ++j)
                xspread = std::max(xspread, (s.x[j] - s.x[0]).cwiseAbs().maxCoeff());
            if (fspread <= cfg.f_tol && xspread <= cfg.x_tol) {
                converged = true;
                break;
            }

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
            for (Eigen::Index j = 0; j < dim; ++j) centroid += s.x[j];
            centroid /= static_cast<double>(dim);

            Eigen::VectorXd xr = centroid + alpha * (centroid - s.x[dim]);
            double fr = neg(xr);
            if (fr < s.f[0]) {
                Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
                double fe = neg(xe);
                if (fe < fr) {
                    s.x[dim] = xe;
                    s.f[dim] = fe;
                } else {
                    s.x[dim] = xr;
                    s.f[dim] = fr;
                }
            } else if (fr < s.f[dim - 1]) {
                s.x[dim] = xr;
                s.f[dim] = fr;
            } else {
                bool outside = fr < s.f[dim];
                Eigen::VectorXd xc =
                    outside ? centroid + beta * (xr - centroid) : centroid + beta * (s.x[dim] - centroid);
                double fc = neg(xc);
                if (fc < (outside ? fr : s.f[dim])) {
                    s.x[dim] = xc;
                    s.f[dim] = fc;
                } else {
                    for (Eigen::Index j = 1; j <= dim; ++j) {
                        s.x[j] = s.x[0] + delta * (s.x[j] - s.x[0]);
                        s.f[j] = neg(s.x[j]);
                    }
                }
            }
        }

        s.sort();
        if (s.f[0] < fbest) {
            fbest = s.f[0];
            best = s.x[0];
        }
        if (evals >= cfg.max_evals) break;
    }

    return {best, -fbest, evals, converged};
}

}  // namespace lptn
