#include "lptn/estimators.hpp"

#include <cmath>

#include "lptn/errors.hpp"
#include "lptn/math.hpp"

namespace lptn {

OlsFit ols(const Dataset& data) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data.x());
    if (qr.rank() < data.p())
        throw numeric_error("ols: design matrix is rank deficient (singular X'X)");
    OlsFit fit;
    fit.beta = qr.solve(data.y());
    fit.fitted = data.x() * fit.beta;
    fit.residuals = data.y() - fit.fitted;
    fit.residual_ss = fit.residuals.squaredNorm();
    // (X'X)^-1 from the triangular factor: X P = Q R gives
    // (X'X)^-1 = P R^-1 R^-T P'
    const Eigen::Index p = data.p();
    Eigen::MatrixXd rinv = qr.matrixR()
                               .topRows(p)
                               .template triangularView<Eigen::Upper>()
                               .solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd inv_permuted = rinv * rinv.transpose();
    const auto& perm = qr.colsPermutation();
    fit.xtx_inverse = perm * inv_permuted * perm.transpose();
    return fit;
}

namespace {

// characteristic optimization steps: OLS standard errors for beta, an
// asymptotic spread for log sigma
Eigen::VectorXd default_steps(const OlsFit& fit, Eigen::Index n, Eigen::Index p) {
    Eigen::VectorXd steps(p + 1);
    double sigma2 = fit.residual_ss / std::max<double>(1.0, static_cast<double>(n - p));
    for (Eigen::Index j = 0; j < p; ++j)
        steps(j) = std::max(1e-8, std::sqrt(std::max(0.0, sigma2 * fit.xtx_inverse(j, j))));
    steps(p) = 0.5 / std::sqrt(2.0 * static_cast<double>(std::max<Eigen::Index>(1, n - p)));
    steps(p) = std::max(steps(p), 0.05);
    return steps;
}

double median_of(Eigen::VectorXd v) {
    std::sort(v.data(), v.data() + v.size());
    Eigen::Index n = v.size();
    return n % 2 == 1 ? v(n / 2) : 0.5 * (v(n / 2 - 1) + v(n / 2));
}

// L1 regression by iteratively reweighted least squares, with a MAD scale.
// Gross outliers can put the OLS basin far from the dominant posterior mode
// under heavy-tailed errors (leverage even flips which residuals look big),
// while the L1 fit stays with the bulk; it seeds the second NM start.
bool l1_start(const Dataset& data, const OlsFit& fit, Eigen::VectorXd& start_out) {
    const Eigen::Index n = data.n();
    const Eigen::Index p = data.p();
    Eigen::VectorXd beta = fit.beta;
    double scale0 = std::sqrt(fit.residual_ss / std::max<double>(1.0, static_cast<double>(n)));
    double floor = std::max(1e-12, 1e-6 * std::max(scale0, 1.0));

    for (int iter = 0; iter < 30; ++iter) {
        Eigen::VectorXd r = data.y() - data.x() * beta;
        Eigen::MatrixXd xtwx = Eigen::MatrixXd::Zero(p, p);
        Eigen::VectorXd xtwy = Eigen::VectorXd::Zero(p);
        for (Eigen::Index i = 0; i < n; ++i) {
            double w = 1.0 / std::max(std::fabs(r(i)), floor);
            xtwx.noalias() += w * data.x().row(i).transpose() * data.x().row(i);
            xtwy.noalias() += w * data.x().row(i).transpose() * data.y()(i);
        }
        Eigen::LDLT<Eigen::MatrixXd> solver(xtwx);
        if (solver.info() != Eigen::Success) return false;
        Eigen::VectorXd next = solver.solve(xtwy);
        double step = (next - beta).cwiseAbs().maxCoeff();
        beta = next;
        if (step < 1e-10 * std::max(1.0, beta.cwiseAbs().maxCoeff())) break;
    }
    if (!beta.allFinite()) return false;

    Eigen::VectorXd abs_resid = (data.y() - data.x() * beta).cwiseAbs();
    double sigma_l1 = 1.4826 * median_of(abs_resid);
    if (!(sigma_l1 > 0.0)) sigma_l1 = 1e-8;

    start_out.resize(p + 1);
    start_out.head(p) = beta;
    start_out(p) = std::log(sigma_l1);
    return true;
}

}  // namespace

MapResult map_estimate(const Dataset& data, const ErrorModel& model, PriorKind prior,
                       const NmConfig& cfg, const Parameters* init) {
    auto check = validate_propriety(data.n(), data.p(), 0);
    if (!check.ok) throw input_error("map_estimate: " + check.reason);

    auto [centered, means] = center_covariates(data);
    OlsFit fit = ols(centered);
    const Eigen::Index p = data.p();

    // Candidate starts: the OLS point, an L1/MAD robust point (the two can
    // sit in different basins under heavy-tailed models with gross outliers),
    // and a caller-provided warm start. Best final value wins.
    std::vector<Eigen::VectorXd> starts;
    {
        Eigen::VectorXd ols_start(p + 1);
        ols_start.head(p) = fit.beta;
        double scale = std::sqrt(fit.residual_ss / static_cast<double>(data.n()));
        ols_start(p) = std::log(std::max(scale, 1e-8));
        starts.push_back(std::move(ols_start));
    }
    {
        Eigen::VectorXd robust_start;
        if (l1_start(centered, fit, robust_start)) starts.push_back(std::move(robust_start));
    }
    if (init != nullptr) {
        // incoming point is on the original scale; recenter the intercept
        Eigen::VectorXd warm(p + 1);
        warm.head(p) = init->beta;
        for (Eigen::Index j = 1; j < p; ++j) warm(0) += init->beta(j) * means(j);
        warm(p) = std::log(init->sigma);
        starts.push_back(std::move(warm));
    }

    auto objective = [&](const Eigen::VectorXd& v) {
        Parameters theta{v.head(p), std::exp(v(p))};
        return log_posterior(theta, centered, model, prior);
    };
    Eigen::VectorXd steps = default_steps(fit, data.n(), p);

    NmResult best;
    best.value = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (const Eigen::VectorXd& start : starts) {
        NmResult nm = nelder_mead_maximize(objective, start, steps, cfg);
        if (!have || nm.value > best.value) {
            best = nm;
            have = true;
        }
    }

    MapResult out;
    out.params.beta = uncenter_beta(best.x.head(p), means);
    out.params.sigma = std::exp(best.x(p));
    out.value = best.value;
    out.converged = best.converged;
    out.evals = best.evals;
    return out;
}

MapResult mle_estimate(const Dataset& data, const ErrorModel& model, const NmConfig& cfg,
                       const Parameters* init) {
    return map_estimate(data, model, PriorKind::Flat, cfg, init);
}

double ConjugatePosterior::sigma2_cdf(double s2) const {
    return inv_gamma_cdf(s2, ig_shape, ig_rate);
}

ConjugatePosterior conjugate_posterior(const Dataset& data) {
    auto check = validate_propriety(data.n(), data.p(), 0);
    if (!check.ok) throw input_error("conjugate_posterior: " + check.reason);
    OlsFit fit = ols(data);
    ConjugatePosterior post;
    post.beta_mean = fit.beta;
    post.xtx_inverse = fit.xtx_inverse;
    post.ig_shape = 0.5 * static_cast<double>(data.n() - data.p());
    post.ig_rate = 0.5 * fit.residual_ss;
    return post;
}

}  // namespace lptn
