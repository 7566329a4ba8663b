#include "lptn/summaries.hpp"

#include <algorithm>
#include <cmath>

#include "lptn/errors.hpp"

namespace lptn {

namespace {

double median_sorted(const Eigen::VectorXd& sorted) {
    const Eigen::Index n = sorted.size();
    return n % 2 == 1 ? sorted(n / 2) : 0.5 * (sorted(n / 2 - 1) + sorted(n / 2));
}

}  // namespace

std::pair<double, double> hpd_interval(Eigen::VectorXd draws, double level) {
    if (draws.size() == 0) throw input_error("hpd_interval: empty sample");
    if (!(level > 0.0 && level < 1.0))
        throw input_error("hpd_interval: level must lie in (0, 1)");
    std::sort(draws.data(), draws.data() + draws.size());
    const Eigen::Index n = draws.size();
    auto window = static_cast<Eigen::Index>(std::ceil(level * static_cast<double>(n)));
    window = std::min(std::max<Eigen::Index>(window, 1), n);
    Eigen::Index best = 0;
    double best_width = draws(window - 1) - draws(0);
    for (Eigen::Index i = 1; i + window <= n; ++i) {
        double width = draws(i + window - 1) - draws(i);
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    return {draws(best), draws(best + window - 1)};
}

FitSummary summarize(const Chain& chain, double level) {
    if (chain.size() == 0) throw input_error("summarize: empty chain");
    if (!(level > 0.0 && level < 1.0)) throw input_error("summarize: level must lie in (0, 1)");
    FitSummary out;
    out.level = level;
    out.acceptance_rate = chain.acceptance_rate;
    const Eigen::Index dim = chain.draws.cols();
    out.params.resize(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXd col = chain.draws.col(c);
        ParameterSummary& s = out.params[c];
        s.mean = col.mean();
        Eigen::VectorXd sorted = col;
        std::sort(sorted.data(), sorted.data() + sorted.size());
        s.median = median_sorted(sorted);
        std::tie(s.hpd_lower, s.hpd_upper) = hpd_interval(col, level);
    }
    return out;
}

Prediction predict(const Chain& chain, const Eigen::VectorXd& x_new, const ErrorModel& model,
                   double level, std::uint64_t seed) {
    if (chain.size() == 0) throw input_error("predict: empty chain");
    if (x_new.size() != chain.p())
        throw input_error("predict: x_new length does not match the chain dimension");
    const Eigen::Index n = chain.size();
    Prediction out;
    out.draws.resize(n);
    RngStream rng(seed);
    for (Eigen::Index t = 0; t < n; ++t) {
        double loc = chain.draws.row(t).head(chain.p()).dot(x_new);
        double sigma = chain.draws(t, chain.p());
        out.draws(t) = loc + sigma * model.sample(rng);
    }
    Eigen::VectorXd sorted = out.draws;
    std::sort(sorted.data(), sorted.data() + sorted.size());
    out.median = median_sorted(sorted);
    std::tie(out.hpd_lower, out.hpd_upper) = hpd_interval(out.draws, level);
    return out;
}

OutlierReport outlier_report(const Chain& chain, const Dataset& data, const ErrorModel& model,
                             double threshold) {
    if (chain.size() == 0) throw input_error("outlier_report: empty chain");
    if (model.kind() == ErrorKind::Student)
        throw input_error("outlier_report: Student error model is not supported");
    if (!(threshold >= 0.001 && threshold <= 0.05))
        throw input_error("outlier_report: threshold must lie in [0.001, 0.05]");
    if (chain.p() != data.p())
        throw input_error("outlier_report: chain and dataset dimensions disagree");

    const Eigen::Index n = data.n();
    const Eigen::Index draws = chain.size();
    OutlierReport report;
    report.threshold = threshold;
    report.rows.resize(n);

    // fitted values for all draws at once: draws x n
    Eigen::MatrixXd fitted = chain.draws.leftCols(chain.p()) * data.x().transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
        double fit_acc = 0.0, err_acc = 0.0, z_acc = 0.0, rho_acc = 0.0;
        for (Eigen::Index t = 0; t < draws; ++t) {
            double fit = fitted(t, i);
            double err = data.y()(i) - fit;
            double z = err / chain.draws(t, chain.p());
            fit_acc += fit;
            err_acc += err;
            z_acc += z;
            rho_acc += outlyingness(z, model);  // mean of per-draw values, not value at mean z
        }
        ObservationDiagnostic& row = report.rows[i];
        const auto m = static_cast<double>(draws);
        row.fitted_mean = fit_acc / m;
        row.error_mean = err_acc / m;
        row.z_mean = z_acc / m;
        row.outlyingness_mean = rho_acc / m;
        row.flagged = row.outlyingness_mean < threshold;
    }
    return report;
}

}  // namespace lptn
