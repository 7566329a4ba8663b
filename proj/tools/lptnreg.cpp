// lptnreg: robust Bayesian linear regression with LPTN errors.
//
// Subcommands: fit, predict, outliers, bf, robustness, efficiency, simstudy.
// Summaries are written as line-oriented "key = value" reports; curves and
// per-observation diagnostics as tab-separated tables with "# key = value"
// metadata. Exit codes: 0 ok, 1 numeric failure, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "lptn/errors.hpp"
#include "lptn/estimators.hpp"
#include "lptn/report_io.hpp"
#include "lptn/reversible_jump.hpp"
#include "lptn/robustness.hpp"
#include "lptn/simstudy.hpp"
#include "lptn/summaries.hpp"

namespace {

using namespace lptn;

struct CommonOptions {
    std::string input;
    std::string response;
    std::string model_spec = "lptn:0.95";
    std::string prior_spec = "recip-sigma";
    std::string out_path;
    std::uint64_t seed = 0;
    int iterations = 20000;
    int burn_in = 5000;
    double level = 0.95;
    bool no_center = false;
    std::string delimiter;
};

void add_data_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("input", opt.input, "input data file (delimited, header row)")->required();
    cmd->add_option("--response", opt.response, "name of the response column")->required();
    cmd->add_option("--delim", opt.delimiter, "cell delimiter (default: auto-detect)");
    cmd->add_flag("--no-center", opt.no_center, "do not center covariates");
}

void add_model_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--model", opt.model_spec, "normal, student:<df> or lptn:<rho>");
    cmd->add_option("--prior", opt.prior_spec, "recip-sigma or flat");
}

void add_sampler_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--seed", opt.seed, "random seed")->required();
    cmd->add_option("--iters", opt.iterations, "total RWM iterations");
    cmd->add_option("--burnin", opt.burn_in, "burn-in iterations");
}

char delim_char(const CommonOptions& opt) {
    if (opt.delimiter.empty()) return '\0';
    if (opt.delimiter == "tab" || opt.delimiter == "\\t") return '\t';
    if (opt.delimiter.size() != 1) throw input_error("--delim must be a single character or 'tab'");
    return opt.delimiter[0];
}

struct PreparedData {
    Dataset data;
    Eigen::VectorXd means;
    std::vector<std::string> covariate_names;
};

PreparedData prepare(const CommonOptions& opt) {
    LoadedData loaded = load_dataset(opt.input, opt.response, delim_char(opt));
    if (opt.no_center)
        return {loaded.data, Eigen::VectorXd::Zero(loaded.data.p()), loaded.covariate_names};
    auto [centered, means] = center_covariates(loaded.data);
    return {centered, means, loaded.covariate_names};
}

void emit_report(const Report& report, const std::string& out_path) {
    if (out_path.empty()) {
        report.write(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot open output file '" + out_path + "'");
    report.write(out);
}

void emit_table(const Table& table, const std::string& out_path) {
    if (out_path.empty()) {
        table.write(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot open output file '" + out_path + "'");
    table.write(out);
}

void describe_run(Report& report, const std::string& command, const CommonOptions& opt,
                  const PreparedData& prepared) {
    report.set("command", command);
    report.set("model", ErrorModel::parse(opt.model_spec).label());
    report.set("prior", prior_label(parse_prior(opt.prior_spec)));
    report.set("seed", static_cast<long>(opt.seed));
    report.set("n", static_cast<long>(prepared.data.n()));
    report.set("p", static_cast<long>(prepared.data.p()));
    report.set("centered", opt.no_center ? "no" : "yes");
    for (Eigen::Index j = 1; j < prepared.data.p(); ++j) {
        std::string name = prepared.covariate_names[static_cast<std::size_t>(j - 1)];
        report.set("column.beta" + std::to_string(j + 1), name);
        if (!opt.no_center)
            report.set("center.beta" + std::to_string(j + 1), prepared.means(j));
    }
}

std::string param_name(Eigen::Index c, Eigen::Index p) {
    return c < p ? "beta" + std::to_string(c + 1) : std::string("sigma");
}

Chain run_chain(const PreparedData& prepared, const ErrorModel& model, PriorKind prior,
                const CommonOptions& opt) {
    auto check = validate_propriety(prepared.data.n(), prepared.data.p(), 1);
    if (!check.ok) throw input_error(check.reason);
    RwmConfig cfg = tuned_rwm_config(prepared.data, model, prior, opt.iterations, opt.burn_in,
                                     opt.seed);
    return sample_posterior(prepared.data, model, prior, cfg);
}

int cmd_fit(const CommonOptions& opt) {
    PreparedData prepared = prepare(opt);
    ErrorModel model = ErrorModel::parse(opt.model_spec);
    PriorKind prior = parse_prior(opt.prior_spec);

    MapResult map = map_estimate(prepared.data, model, prior);
    MapResult mle = mle_estimate(prepared.data, model);
    Chain chain = run_chain(prepared, model, prior, opt);
    FitSummary summary = summarize(chain, opt.level);

    Report report;
    describe_run(report, "fit", opt, prepared);
    report.set("iterations", static_cast<long>(opt.iterations));
    report.set("burn_in", static_cast<long>(opt.burn_in));
    report.set("level", opt.level);
    report.set("acceptance_rate", summary.acceptance_rate);
    report.set("map_converged", map.converged ? "yes" : "no");
    report.set("mle_converged", mle.converged ? "yes" : "no");
    const Eigen::Index p = prepared.data.p();
    for (Eigen::Index c = 0; c < p + 1; ++c) {
        std::string key = "parameter." + param_name(c, p);
        const ParameterSummary& s = summary.params[static_cast<std::size_t>(c)];
        report.set(key + ".mean", s.mean);
        report.set(key + ".median", s.median);
        report.set(key + ".map", c < p ? map.params.beta(c) : map.params.sigma);
        report.set(key + ".mle", c < p ? mle.params.beta(c) : mle.params.sigma);
        report.set(key + ".hpd_lower", s.hpd_lower);
        report.set(key + ".hpd_upper", s.hpd_upper);
    }
    emit_report(report, opt.out_path);
    return 0;
}

int cmd_predict(const CommonOptions& opt, const std::vector<double>& x_new_raw) {
    PreparedData prepared = prepare(opt);
    ErrorModel model = ErrorModel::parse(opt.model_spec);
    PriorKind prior = parse_prior(opt.prior_spec);
    const Eigen::Index p = prepared.data.p();
    if (static_cast<Eigen::Index>(x_new_raw.size()) != p - 1)
        throw input_error("--x needs exactly " + std::to_string(p - 1) + " covariate values");

    Eigen::VectorXd x_new(p);
    x_new(0) = 1.0;
    for (Eigen::Index j = 1; j < p; ++j)
        x_new(j) = x_new_raw[static_cast<std::size_t>(j - 1)] - prepared.means(j);

    Chain chain = run_chain(prepared, model, prior, opt);
    Prediction pred = predict(chain, x_new, model, opt.level,
                              RngStream(opt.seed).substream(0x7072).seed());

    Report report;
    describe_run(report, "predict", opt, prepared);
    report.set("level", opt.level);
    report.set("prediction.median", pred.median);
    report.set("prediction.hpd_lower", pred.hpd_lower);
    report.set("prediction.hpd_upper", pred.hpd_upper);
    emit_report(report, opt.out_path);
    return 0;
}

int cmd_outliers(const CommonOptions& opt, double threshold) {
    PreparedData prepared = prepare(opt);
    ErrorModel model = ErrorModel::parse(opt.model_spec);
    PriorKind prior = parse_prior(opt.prior_spec);

    Chain chain = run_chain(prepared, model, prior, opt);
    OutlierReport report = outlier_report(chain, prepared.data, model, threshold);

    Table table;
    table.metadata.set("command", "outliers");
    table.metadata.set("model", model.label());
    table.metadata.set("prior", prior_label(prior));
    table.metadata.set("seed", static_cast<long>(opt.seed));
    table.metadata.set("threshold", threshold);
    table.columns = {"observation", "y",       "fitted_mean", "error_mean",
                     "z_mean",      "outlyingness", "flagged"};
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const ObservationDiagnostic& row = report.rows[i];
        table.add_row({std::to_string(i + 1),
                       format_double(prepared.data.y()(static_cast<Eigen::Index>(i))),
                       format_double(row.fitted_mean), format_double(row.error_mean),
                       format_double(row.z_mean), format_double(row.outlyingness_mean),
                       row.flagged ? "yes" : "no"});
    }
    emit_table(table, opt.out_path);
    return 0;
}

int cmd_bf(const CommonOptions& opt, int coefficient) {
    PreparedData prepared = prepare(opt);
    ErrorModel model = ErrorModel::parse(opt.model_spec);
    PriorKind prior = parse_prior(opt.prior_spec);

    RjConfig cfg = tuned_rj_config(prepared.data, model, prior, opt.iterations, opt.burn_in,
                                   coefficient, opt.seed);
    BayesFactorResult result = bayes_factor_rj(prepared.data, model, prior, cfg);

    Report report;
    describe_run(report, "bf", opt, prepared);
    report.set("tested_coefficient", "beta" + std::to_string(coefficient));
    report.set("bf.estimate", result.bf);
    report.set("bf.std_error", result.std_error);
    report.set("bf.visits_h1", result.visits_h1);
    report.set("bf.visits_h0", result.visits_h0);
    report.set("bf.between_acceptance", result.between_acceptance);
    emit_report(report, opt.out_path);
    return 0;
}

int cmd_robustness(const CommonOptions& opt, long index, double offset, double slope,
                   const std::vector<double>& omegas) {
    PreparedData prepared = prepare(opt);
    ErrorModel model = ErrorModel::parse(opt.model_spec);
    PriorKind prior = parse_prior(opt.prior_spec);
    if (index < 1 || index > prepared.data.n())
        throw input_error("--index must name an observation between 1 and n");

    OutlierPath path{index - 1, offset, slope, omegas};
    RobustnessCurve curve = robustness_curve(prepared.data, model, prior, path, opt.iterations,
                                             opt.burn_in, opt.seed);

    Table table;
    table.metadata.set("command", "robustness");
    table.metadata.set("model", model.label());
    table.metadata.set("prior", prior_label(prior));
    table.metadata.set("seed", static_cast<long>(opt.seed));
    table.metadata.set("index", index);
    table.metadata.set("offset", offset);
    table.metadata.set("slope", slope);
    const Eigen::Index p = prepared.data.p();
    for (Eigen::Index c = 0; c < p + 1; ++c) {
        table.metadata.set("reference." + param_name(c, p) + ".mean", curve.reference_means(c));
        table.metadata.set("reference." + param_name(c, p) + ".sd", curve.reference_sds(c));
    }
    table.columns = {"omega"};
    for (Eigen::Index c = 0; c < p + 1; ++c) table.columns.push_back(param_name(c, p) + "_mean");
    for (std::size_t w = 0; w < curve.omegas.size(); ++w) {
        std::vector<std::string> row{format_double(curve.omegas[w])};
        for (Eigen::Index c = 0; c < p + 1; ++c)
            row.push_back(format_double(curve.full_means(static_cast<Eigen::Index>(w), c)));
        table.add_row(row);
    }
    emit_table(table, opt.out_path);
    return 0;
}

int cmd_efficiency(const std::vector<double>& rhos, const std::string& out_path) {
    Table table;
    table.metadata.set("command", "efficiency");
    table.columns = {"rho", "sigma_star_ratio"};
    for (double rho : rhos)
        table.add_row({format_double(rho), format_double(kl_sigma_star(rho))});
    emit_table(table, out_path);
    return 0;
}

int cmd_simstudy(const std::vector<int>& scenarios, const std::vector<std::string>& estimators,
                 const std::vector<long>& n_values, long reps, std::uint64_t seed,
                 const std::string& out_path) {
    StudyConfig config;
    config.scenario_ids = scenarios;
    config.estimators.clear();
    for (const std::string& spec : estimators)
        config.estimators.push_back(ErrorModel::parse(spec));
    config.n_values.clear();
    for (long n : n_values) config.n_values.push_back(n);
    config.replications = reps;
    config.seed = seed;

    StudyReport study = run_study(config);

    Table table;
    table.metadata.set("command", "simstudy");
    table.metadata.set("seed", static_cast<long>(seed));
    table.metadata.set("replications", reps);
    table.columns = {"estimator",     "scenario",        "n",
                     "m_beta",        "m_sigma",         "premium_beta",
                     "premium_sigma", "protection_beta", "protection_sigma",
                     "replications",  "failures"};
    for (const StudyRow& row : study.rows)
        table.add_row({row.estimator, std::to_string(row.scenario), std::to_string(row.n),
                       format_double(row.m_beta), format_double(row.m_sigma),
                       format_double(row.premium_beta), format_double(row.premium_sigma),
                       format_double(row.protection_beta), format_double(row.protection_sigma),
                       std::to_string(row.replications), std::to_string(row.failures)});
    emit_table(table, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust Bayesian linear regression with log-Pareto-tailed normal errors"};
    app.require_subcommand(1);

    CommonOptions opt;

    CLI::App* fit = app.add_subcommand("fit", "posterior summaries, MAP and MLE");
    add_data_options(fit, opt);
    add_model_options(fit, opt);
    add_sampler_options(fit, opt);
    fit->add_option("--level", opt.level, "credible level for HPD intervals");
    fit->add_option("--out", opt.out_path, "output file (default: stdout)");

    CLI::App* predict_cmd = app.add_subcommand("predict", "posterior predictive for a new point");
    std::vector<double> x_new;
    add_data_options(predict_cmd, opt);
    add_model_options(predict_cmd, opt);
    add_sampler_options(predict_cmd, opt);
    predict_cmd->add_option("--x", x_new, "covariate values of the new point (original scale)")
        ->required()
        ->delimiter(',');
    predict_cmd->add_option("--level", opt.level, "credible level");
    predict_cmd->add_option("--out", opt.out_path, "output file");

    CLI::App* outliers = app.add_subcommand("outliers", "per-observation outlyingness");
    double threshold = 0.01;
    add_data_options(outliers, opt);
    add_model_options(outliers, opt);
    add_sampler_options(outliers, opt);
    outliers->add_option("--threshold", threshold, "flagging threshold in [0.001, 0.05]");
    outliers->add_option("--out", opt.out_path, "output file");

    CLI::App* bf = app.add_subcommand("bf", "Bayes factor for beta_j = 0 by reversible jump");
    int coefficient = 2;
    add_data_options(bf, opt);
    add_model_options(bf, opt);
    add_sampler_options(bf, opt);
    bf->add_option("--coefficient", coefficient, "tested coefficient index (2..p)")->required();
    bf->add_option("--out", opt.out_path, "output file");

    CLI::App* robustness =
        app.add_subcommand("robustness", "posterior means along an outlier path");
    long path_index = 1;
    double path_offset = 0.0;
    double path_slope = 1.0;
    std::vector<double> omegas;
    add_data_options(robustness, opt);
    add_model_options(robustness, opt);
    add_sampler_options(robustness, opt);
    robustness->add_option("--index", path_index, "observation to slide (1-based)")->required();
    robustness->add_option("--offset", path_offset, "path offset a in y = a + b*omega");
    robustness->add_option("--slope", path_slope, "path slope b (nonzero)");
    robustness->add_option("--omegas", omegas, "omega grid, strictly increasing")
        ->required()
        ->delimiter(',');
    robustness->add_option("--out", opt.out_path, "output file");

    CLI::App* efficiency = app.add_subcommand("efficiency", "sigma*/sigma0 over a rho grid");
    std::vector<double> rhos = {0.80, 0.84, 0.90, 0.93, 0.95, 0.98};
    std::string efficiency_out;
    efficiency->add_option("--rhos", rhos, "rho grid")->delimiter(',');
    efficiency->add_option("--out", efficiency_out, "output file");

    CLI::App* simstudy = app.add_subcommand("simstudy", "premium/protection simulation study");
    std::vector<int> scenarios = {0, 1, 2, 3, 4};
    std::vector<std::string> estimator_specs = {"normal", "lptn:0.95", "student:4"};
    std::vector<long> n_values = {50, 100};
    long reps = 2000;
    std::uint64_t study_seed = 0;
    std::string study_out;
    simstudy->add_option("--scenarios", scenarios, "scenario ids (0..4)")->delimiter(',');
    simstudy->add_option("--estimators", estimator_specs, "estimator models")->delimiter(',');
    simstudy->add_option("--n", n_values, "sample sizes")->delimiter(',');
    simstudy->add_option("--reps", reps, "replications per cell");
    simstudy->add_option("--seed", study_seed, "random seed")->required();
    simstudy->add_option("--out", study_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "error.kind = input\n";
        return 2;
    }

    try {
        if (fit->parsed()) return cmd_fit(opt);
        if (predict_cmd->parsed()) return cmd_predict(opt, x_new);
        if (outliers->parsed()) return cmd_outliers(opt, threshold);
        if (bf->parsed()) return cmd_bf(opt, coefficient);
        if (robustness->parsed())
            return cmd_robustness(opt, path_index, path_offset, path_slope, omegas);
        if (efficiency->parsed()) return cmd_efficiency(rhos, efficiency_out);
        if (simstudy->parsed())
            return cmd_simstudy(scenarios, estimator_specs, n_values, reps, study_seed,
                                study_out);
    } catch (const input_error& e) {
        std::cerr << "error.kind = input\n";
        std::cerr << "error.message = " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error.kind = numeric\n";
        std::cerr << "error.message = " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error.kind = numeric\n";
        std::cerr << "error.message = " << e.what() << "\n";
        return 1;
    }
    return 0;
}
