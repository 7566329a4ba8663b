// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run the whole binary for the full report or filter single criteria
// with -tc=*NN*.

#include <doctest.h>

#include <cstdio>
#include <exception>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "lptn/estimators.hpp"
#include "lptn/quadrature.hpp"
#include "lptn/report_io.hpp"
#include "lptn/robustness.hpp"
#include "lptn/rwm.hpp"
#include "lptn/simstudy.hpp"
#include "lptn/summaries.hpp"
#include "support/oracles.hpp"

using namespace lptn;

namespace {

struct Criterion {
    std::string name;
    bool ok = true;

    explicit Criterion(std::string n) : name(std::move(n)) {}
    ~Criterion() {
        if (std::uncaught_exceptions() > 0) ok = false;  // aborted mid-criterion
        std::printf("[acceptance] %s: %s\n", name.c_str(), ok ? "PASS" : "FAIL");
        std::fflush(stdout);
    }
    void expect(bool condition, const std::string& what) {
        ok = ok && condition;
        if (!condition) {
            std::printf("[acceptance]   failed check: %s\n", what.c_str());
            std::fflush(stdout);
        }
        CHECK_MESSAGE(condition, what);
    }
};

Dataset case_study_data(std::uint64_t seed, Eigen::Index n = 50) {
    RngStream rng(seed);
    Dataset design = case_study_design(n, rng);
    Eigen::VectorXd beta = case_study_beta();
    RngStream noise = rng.substream(1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i)
        y(i) = design.x().row(i).dot(beta) + 40.0 * noise.normal();
    return Dataset(design.x(), y);
}

// the n=5, p=2 brute-force-integrable probe instance; nonoutlier residual
// scale tuned near 1 so the LPTN ratio approaches 1 from above
Dataset probe_instance() {
    Eigen::MatrixXd x(5, 2);
    x << 1, -2, 1, -1, 1, 0, 1, 1, 1, 2;
    Eigen::VectorXd y(5);
    y << -14.99, -8.08, 1.12, 7.45, 16.0;
    return Dataset(x, y);
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(LPTNREG_BIN) + " " + args + " >/dev/null 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("criterion 01_parameter_derivation") {
    Criterion c("criterion 1 (parameter derivation)");
    LptnParams p = derive_params(0.95);
    c.expect(std::round(p.tau * 100.0) / 100.0 == 1.96, "tau rounds to 1.96");
    c.expect(std::round(p.lambda * 100.0) / 100.0 == 3.08, "lambda rounds to 3.08");
    oracle::LptnRef ref(0.95L);
    c.expect(std::fabs(p.tau - static_cast<double>(ref.tau)) < 1e-10,
             "tau matches the quantile oracle at full precision");
    c.expect(std::fabs(p.lambda - static_cast<double>(ref.lambda)) < 1e-10,
             "lambda matches the oracle at full precision");
}

TEST_CASE("criterion 02_distribution_integrity") {
    Criterion c("criterion 2 (distribution integrity)");
    const double log_dbl_max = std::log(std::numeric_limits<double>::max());
    for (double rho : {0.80, 0.84, 0.90, 0.93, 0.95, 0.98}) {
        LptnParams p = derive_params(rho);

        // normalization: quadrature over [-1e8, 1e8] plus the analytic remainder
        double center = adaptive_simpson([&](double z) { return lptn_pdf(z, p); }, -p.tau, p.tau,
                                         1e-11);
        auto tail_logscale = [&](double t) {
            double z = std::exp(t);
            return lptn_pdf(z, p) * z;
        };
        double tails =
            2.0 * adaptive_simpson(tail_logscale, std::log(p.tau), std::log(1e8), 1e-11);
        double remainder = 2.0 * p.tail_mass * std::pow(p.log_tau / std::log(1e8), p.lambda);
        c.expect(std::fabs(center + tails + remainder - 1.0) < 1e-8,
                 "pdf normalizes to 1 within 1e-8 at rho " + format_double(rho));

        // cdf/quantile round trip wherever the quantile is representable
        bool round_trip = true;
        for (int i = 1; i < 1000; ++i) {
            double u = i / 1000.0;
            double beyond = std::min(u, 1.0 - u);
            double log_q = p.log_tau * std::pow(p.tail_mass / beyond, 1.0 / p.lambda);
            if (beyond < p.tail_mass && log_q > log_dbl_max) continue;  // beyond double range
            round_trip =
                round_trip && std::fabs(lptn_cdf(lptn_quantile(u, p), p) - u) < 1e-10;
        }
        c.expect(round_trip, "cdf/quantile round trip to 1e-10 at rho " + format_double(rho));

        // Monte Carlo core mass
        RngStream rng(900 + static_cast<std::uint64_t>(rho * 1000));
        const int draws = 1000000;
        int core = 0;
        for (int i = 0; i < draws; ++i)
            if (std::fabs(lptn_sample(p, rng)) <= p.tau) ++core;
        double se = std::sqrt(rho * (1.0 - rho) / draws);
        c.expect(std::fabs(static_cast<double>(core) / draws - rho) < 3.0 * se,
                 "core mass within 3 binomial se at rho " + format_double(rho));
    }
}

TEST_CASE("criterion 03_sampler_oracle") {
    Criterion c("criterion 3 (sampler oracle)");
    Dataset data = case_study_data(303);
    ConjugatePosterior post = conjugate_posterior(data);

    RwmConfig cfg = tuned_rwm_config(data, ErrorModel::normal(), PriorKind::ReciprocalSigma,
                                     120000, 20000, 30303);
    Chain chain = sample_posterior(data, ErrorModel::normal(), PriorKind::ReciprocalSigma, cfg);
    c.expect(chain.size() == 100000, "chain retains 1e5 draws");

    for (Eigen::Index j = 0; j < 4; ++j) {
        Eigen::VectorXd draws = chain.beta_draws(j);
        double se = batch_means_se(draws);
        c.expect(std::fabs(draws.mean() - post.beta_mean(j)) < 3.0 * se,
                 "beta" + std::to_string(j + 1) + " mean within 3 MC se of the conjugate mean");
    }

    Eigen::VectorXd sigma = chain.sigma_draws();
    std::vector<double> sigma2(static_cast<std::size_t>(sigma.size()));
    for (Eigen::Index t = 0; t < sigma.size(); ++t)
        sigma2[static_cast<std::size_t>(t)] = sigma(t) * sigma(t);
    double ks = oracle::ks_distance(
        sigma2, [&](double s2) { return inv_gamma_cdf(s2, post.ig_shape, post.ig_rate); });
    c.expect(ks < 0.02, "sigma^2 draws pass the KS test against Inverse-Gamma at 0.02");
}

TEST_CASE("criterion 04_whole_robustness_curve") {
    Criterion c("criterion 4 (whole-robustness curve)");
    Dataset data = case_study_data(404);

    // slide the highest-leverage observation
    Eigen::Index target = 1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        double lev = data.x().row(i).tail(3).norm();
        if (lev > best) {
            best = lev;
            target = i;
        }
    }
    OutlierPath path{target, data.x().row(target).dot(case_study_beta()), 1.0,
                     {10.0, 40.0, 80.0, 120.0, 160.0, 240.0, 320.0, 480.0, 1000.0, 1e4, 1e5, 1e6}};

    RobustnessCurve lptn_curve = robustness_curve(data, ErrorModel::lptn(0.95),
                                                  PriorKind::ReciprocalSigma, path, 20000, 5000,
                                                  40404);
    const Eigen::Index last = static_cast<Eigen::Index>(path.omegas.size()) - 1;
    double peak_normalized = 0.0;
    for (Eigen::Index w = 1; w + 1 < last; ++w) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < 4; ++j)
            acc += std::fabs(lptn_curve.full_means(w, j) - lptn_curve.reference_means(j)) /
                   lptn_curve.reference_sds(j);
        peak_normalized = std::max(peak_normalized, acc);
    }
    double final_normalized = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j) {
        double gap = std::fabs(lptn_curve.full_means(last, j) - lptn_curve.reference_means(j));
        c.expect(gap < lptn_curve.reference_sds(j),
                 "lptn gap at omega=1e6 below one posterior sd for beta" + std::to_string(j + 1));
        final_normalized += gap / lptn_curve.reference_sds(j);
    }
    c.expect(final_normalized < peak_normalized,
             "lptn curve rises then vanishes (final gap below the mid-curve peak)");

    OutlierPath normal_path = path;
    normal_path.omegas = {1e4, 1e6};
    RobustnessCurve normal_curve = robustness_curve(data, ErrorModel::normal(),
                                                    PriorKind::ReciprocalSigma, normal_path,
                                                    20000, 5000, 50505);
    double drift_near = 0.0, drift_far = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j) {
        drift_near += std::fabs(normal_curve.full_means(0, j) - normal_curve.reference_means(j));
        drift_far += std::fabs(normal_curve.full_means(1, j) - normal_curve.reference_means(j));
    }
    double growth = drift_far / drift_near;
    c.expect(growth > 80.0 && growth < 120.0,
             "normal-model gap grows linearly in omega (x100 between 1e4 and 1e6, measured " +
                 format_double(growth) + ")");
}

TEST_CASE("criterion 05_marginal_ratio") {
    Criterion c("criterion 5 (marginal ratio probe)");
    Dataset data = probe_instance();
    OutlierPath path{4, 15.5, 1.0, {100.0, 1e6}};

    MarginalRatioProbe lptn_far = marginal_ratio_probe(data, ErrorModel::lptn(0.95),
                                                       PriorKind::ReciprocalSigma, path, 1e6);
    c.expect(std::fabs(lptn_far.ratio - 1.0) < 0.05,
             "lptn probe ratio within 0.05 of 1 at omega=1e6 (measured " +
                 format_double(lptn_far.ratio) + ")");

    MarginalRatioProbe normal_near = marginal_ratio_probe(data, ErrorModel::normal(),
                                                          PriorKind::ReciprocalSigma, path, 100.0);
    MarginalRatioProbe normal_far = marginal_ratio_probe(data, ErrorModel::normal(),
                                                         PriorKind::ReciprocalSigma, path, 1e6);
    c.expect(std::fabs(normal_far.log_ratio) > std::fabs(normal_near.log_ratio),
             "normal probe moves away from 1 as omega grows");
    c.expect(std::fabs(normal_far.log_ratio) > std::log(1.05),
             "normal probe ends far from 1");
}

TEST_CASE("criterion 06_efficiency_numerics") {
    Criterion c("criterion 6 (efficiency numerics)");
    double r90 = kl_sigma_star(0.90);
    c.expect(std::fabs(r90 - 1.03) <= 0.01,
             "sigma*/sigma0 at rho=0.9 equals 1.03 +- 0.01 (measured " + format_double(r90) + ")");
    // Known red: the true maximizer gives 1.010647 (verified against brute-force
    // quadrature and the stationarity identity), 6.5e-4 outside the stated band.
    double r95 = kl_sigma_star(0.95);
    c.expect(std::fabs(r95 - 1.0) <= 0.01,
             "sigma*/sigma0 at rho=0.95 within 0.01 of 1 (measured " + format_double(r95) + ")");
    LptnParams p = derive_params(0.95);
    for (double eta : {0.8, 1.0, 1.25})
        c.expect(std::fabs(kl_beta_stationarity(eta, p)) < 1e-6,
                 "beta-stationarity integral vanishes at eta " + format_double(eta));
}

TEST_CASE("criterion 07_breakdown_arithmetic") {
    Criterion c("criterion 7 (breakdown arithmetic)");
    c.expect(breakdown_check(50, 4, 21).ok, "n=50, p=4 tolerates 21 outliers");
    c.expect(!breakdown_check(50, 4, 22).ok, "n=50, p=4 refuses 22 outliers");
    BreakdownCheck tight = breakdown_check(5, 2, 1);
    c.expect(tight.ok && tight.margin == 0.0, "n=5, p=2, l=1 has exactly zero margin");
}

TEST_CASE("criterion 08_desk_scale_study") {
    Criterion c("criterion 8 (desk-scale premium/protection study)");
    StudyConfig config;
    config.scenario_ids = {0, 1};
    config.estimators = {ErrorModel::normal(), ErrorModel::lptn(0.95), ErrorModel::student(4.0)};
    config.n_values = {50};
    config.replications = 2000;
    config.seed = 80808;
    StudyReport report = run_study(config);

    auto find_row = [&](const std::string& est, int scenario) -> const StudyRow& {
        for (const StudyRow& row : report.rows)
            if (row.estimator == est && row.scenario == scenario) return row;
        throw std::runtime_error("row not found");
    };
    const StudyRow& lptn1 = find_row("lptn:0.95", 1);
    const StudyRow& student1 = find_row("student:4", 1);

    c.expect(lptn1.protection_sigma > lptn1.premium_sigma,
             "lptn(0.95) sigma protection (" + format_double(lptn1.protection_sigma) +
                 ") exceeds its premium (" + format_double(lptn1.premium_sigma) + ")");
    c.expect(lptn1.protection_beta > 0.0,
             "lptn(0.95) beta protection positive (" + format_double(lptn1.protection_beta) + ")");
    // Known red: the t4 scale's large negative bias (premium_sigma here is
    // about 1.1) cancels contamination inflation, so its pointwise protection
    // edges out LPTN's even though the LPTN curve dominates in the
    // premium-vs-protection plane.
    c.expect(student1.protection_sigma < lptn1.protection_sigma,
             "student(4) sigma protection (" + format_double(student1.protection_sigma) +
                 ", premium " + format_double(student1.premium_sigma) +
                 ") below lptn(0.95) (" + format_double(lptn1.protection_sigma) + ", premium " +
                 format_double(lptn1.premium_sigma) + ")");
}

TEST_CASE("criterion 09_outlier_diagnostics") {
    Criterion c("criterion 9 (outlier diagnostics)");
    Dataset clean = case_study_data(909);
    // plant three gross outliers: two obvious with balanced signs (so the
    // normal-model hyperplane is not dragged toward one side) and one mild
    // enough to hide behind the inflated normal-model scale
    Eigen::VectorXd y = clean.y();
    Eigen::VectorXd beta = case_study_beta();
    y(0) = clean.x().row(0).dot(beta) - 12.0 * 40.0;
    y(2) = clean.x().row(2).dot(beta) + 10.0 * 40.0;
    y(48) = clean.x().row(48).dot(beta) + 5.0 * 40.0;
    Dataset data(clean.x(), y);

    ErrorModel lptn = ErrorModel::lptn(0.95);
    RwmConfig cfg = tuned_rwm_config(data, lptn, PriorKind::ReciprocalSigma, 40000, 8000, 90909);
    Chain chain = sample_posterior(data, lptn, PriorKind::ReciprocalSigma, cfg);
    OutlierReport lptn_report = outlier_report(chain, data, lptn, 0.01);

    std::vector<std::size_t> order(50);
    for (std::size_t i = 0; i < 50; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lptn_report.rows[a].outlyingness_mean < lptn_report.rows[b].outlyingness_mean;
    });
    bool planted_smallest = (order[0] == 0 || order[0] == 2 || order[0] == 48) &&
                            (order[1] == 0 || order[1] == 2 || order[1] == 48) &&
                            (order[2] == 0 || order[2] == 2 || order[2] == 48);
    c.expect(planted_smallest, "the three planted outliers have the three smallest rho estimates");
    c.expect(lptn_report.rows[0].flagged && lptn_report.rows[2].flagged &&
                 lptn_report.rows[48].flagged,
             "all three planted outliers flagged at threshold 0.01 under lptn");

    ErrorModel normal = ErrorModel::normal();
    RwmConfig ncfg =
        tuned_rwm_config(data, normal, PriorKind::ReciprocalSigma, 40000, 8000, 91919);
    Chain nchain = sample_posterior(data, normal, PriorKind::ReciprocalSigma, ncfg);
    OutlierReport normal_report = outlier_report(nchain, data, normal, 0.02);
    bool masked = !normal_report.rows[0].flagged || !normal_report.rows[2].flagged ||
                  !normal_report.rows[48].flagged;
    c.expect(masked, "at least one planted outlier is unflagged under the normal model at 0.02");
}

TEST_CASE("criterion 10_determinism") {
    Criterion c("criterion 10 (determinism)");

    // RWM chain at the criterion-3 configuration
    {
        Dataset data = case_study_data(303);
        RwmConfig cfg = tuned_rwm_config(data, ErrorModel::normal(), PriorKind::ReciprocalSigma,
                                         120000, 20000, 30303);
        Chain a = sample_posterior(data, ErrorModel::normal(), PriorKind::ReciprocalSigma, cfg);
        Chain b = sample_posterior(data, ErrorModel::normal(), PriorKind::ReciprocalSigma, cfg);
        c.expect((a.draws - b.draws).cwiseAbs().maxCoeff() == 0.0,
                 "conjugate-oracle chain is bit-reproducible");
    }

    // robustness curve on a reduced grid
    {
        Dataset data = case_study_data(404);
        OutlierPath path{5, data.x().row(5).dot(case_study_beta()), 1.0, {100.0, 1e4}};
        RobustnessCurve a = robustness_curve(data, ErrorModel::lptn(0.95),
                                             PriorKind::ReciprocalSigma, path, 8000, 2000, 617);
        RobustnessCurve b = robustness_curve(data, ErrorModel::lptn(0.95),
                                             PriorKind::ReciprocalSigma, path, 8000, 2000, 617);
        c.expect((a.full_means - b.full_means).cwiseAbs().maxCoeff() == 0.0 &&
                     (a.reference_means - b.reference_means).cwiseAbs().maxCoeff() == 0.0,
                 "robustness curve is bit-reproducible");
    }

    // marginal probe (deterministic quadrature)
    {
        Dataset data = probe_instance();
        OutlierPath path{4, 15.5, 1.0, {100.0}};
        MarginalRatioProbe a = marginal_ratio_probe(data, ErrorModel::lptn(0.95),
                                                    PriorKind::ReciprocalSigma, path, 100.0);
        MarginalRatioProbe b = marginal_ratio_probe(data, ErrorModel::lptn(0.95),
                                                    PriorKind::ReciprocalSigma, path, 100.0);
        c.expect(a.log_ratio == b.log_ratio, "marginal probe is bit-reproducible");
    }

    // study harness at reduced replication count
    {
        StudyConfig config;
        config.scenario_ids = {0, 1};
        config.estimators = {ErrorModel::normal(), ErrorModel::lptn(0.95)};
        config.n_values = {50};
        config.replications = 200;
        config.seed = 80808;
        StudyReport a = run_study(config);
        StudyReport b = run_study(config);
        bool same = a.rows.size() == b.rows.size();
        for (std::size_t i = 0; same && i < a.rows.size(); ++i)
            same = a.rows[i].m_beta == b.rows[i].m_beta && a.rows[i].m_sigma == b.rows[i].m_sigma;
        c.expect(same, "study harness is bit-reproducible");
    }

    // CLI end to end: byte-identical artifacts
    {
        Dataset data = case_study_data(909);
        std::ofstream csv("/tmp/lptn_acc_data.csv");
        csv << "value,sector,living,land\n";
        for (Eigen::Index i = 0; i < data.n(); ++i) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", data.y()(i),
                          data.x()(i, 1), data.x()(i, 2), data.x()(i, 3));
            csv << buf;
        }
        csv.close();
        int ra = run_cli(
            "fit /tmp/lptn_acc_data.csv --response value --model lptn:0.95 --seed 99 "
            "--iters 10000 --burnin 2500 --out /tmp/lptn_acc_fit_a.txt");
        int rb = run_cli(
            "fit /tmp/lptn_acc_data.csv --response value --model lptn:0.95 --seed 99 "
            "--iters 10000 --burnin 2500 --out /tmp/lptn_acc_fit_b.txt");
        c.expect(ra == 0 && rb == 0, "CLI fit runs succeed");
        std::string a = slurp("/tmp/lptn_acc_fit_a.txt");
        c.expect(!a.empty() && a == slurp("/tmp/lptn_acc_fit_b.txt"),
                 "CLI fit output is byte-identical across reruns");
    }
}
