#include "app.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>

#include "CLI11.hpp"

#include "bayesmv/frontier.hpp"
#include "bayesmv/moments.hpp"
#include "bayesmv/portfolio.hpp"
#include "bayesmv/predictive.hpp"
#include "returns_csv.hpp"

namespace bayesmv::cli {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const VectorXd& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Json to_json(const MatrixXd& m) {
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        out.push_back(to_json(VectorXd(m.row(i).transpose())));
    }
    return out;
}

Json optional_number(const std::optional<double>& value) {
    return value ? Json(*value) : Json(nullptr);
}

std::optional<double> try_bayes_coefficient(Index k, Index n) {
    if (n > k + 2) {
        return bayes_coefficient(k, n);
    }
    return std::nullopt;
}

[[noreturn]] void usage_error(const std::string& message) {
    throw Error(ErrorCode::InvalidArgument, message);
}

ReturnsWindow load_window(const RunConfig& config) {
    if (config.input_path.empty()) {
        usage_error("--input is required for this command");
    }
    return parse_returns_csv(config.input_path, config.prices);
}

Json rule_json(const PortfolioSolution& s) {
    Json out;
    out["rule"] = to_string(s.rule.kind);
    out["parameter"] = s.rule.parameter;
    out["expected_return"] = s.expected_return;
    out["variance"] = s.variance;
    out["weights"] = to_json(s.weights);
    return out;
}

Json frontier_json(const FrontierParams& f) {
    Json out;
    out["family"] = to_string(f.family);
    out["r_gmv"] = f.r_gmv;
    out["v_gmv"] = f.v_gmv;
    out["slope"] = f.slope;
    return out;
}

Report estimate_report(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const MomentSummary summary = estimate_moments(window);

    Report report;
    Json& j = report.json;
    j["command"] = "estimate";
    j["n"] = summary.n();
    j["k"] = summary.k();
    j["labels"] = window.labels();
    if (window.periods()) {
        j["first_period"] = window.periods()->front();
        j["last_period"] = window.periods()->back();
    } else {
        j["first_period"] = nullptr;
        j["last_period"] = nullptr;
    }
    j["mean"] = to_json(summary.mean());
    j["scatter"] = to_json(summary.scatter());
    j["c"] = optional_number(try_bayes_coefficient(summary.k(), summary.n()));
    j["d"] = sample_coefficient(summary.n());

    report.table.header = {"asset", "mean"};
    for (const auto& label : window.labels()) {
        report.table.header.push_back(label);
    }
    for (Index i = 0; i < summary.k(); ++i) {
        std::vector<Cell> row{window.labels()[static_cast<std::size_t>(i)], summary.mean()(i)};
        for (Index c = 0; c < summary.k(); ++c) {
            row.emplace_back(summary.scatter()(i, c));
        }
        report.table.rows.push_back(std::move(row));
    }
    return report;
}

int count_targets(const RunConfig& config) {
    return static_cast<int>(config.gamma.has_value()) +
           static_cast<int>(config.target_return.has_value()) +
           static_cast<int>(config.target_variance.has_value());
}

std::vector<PortfolioSolution> solve_rules(const MomentSummary& summary, const RunConfig& config) {
    if (count_targets(config) != 1) {
        usage_error("specify exactly one of --gamma, --target-return, --target-variance");
    }
    std::vector<PortfolioSolution> solutions;
    const bool bayes = config.rule != RuleChoice::Sample;
    const bool sample = config.rule != RuleChoice::Bayes;
    if (config.gamma) {
        if (bayes) solutions.push_back(bayes_weights_gamma(summary, *config.gamma));
        if (sample) solutions.push_back(sample_weights_gamma(summary, *config.gamma));
        return solutions;
    }
    if (sample) {
        usage_error("the sample rule is parameterized by --gamma only");
    }
    if (config.target_return) {
        solutions.push_back(bayes_weights_target_return(summary, *config.target_return));
    } else {
        solutions.push_back(bayes_weights_target_variance(summary, *config.target_variance));
    }
    return solutions;
}

Report optimize_report(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const MomentSummary summary = estimate_moments(window);
    const std::vector<PortfolioSolution> solutions = solve_rules(summary, config);

    Report report;
    Json& j = report.json;
    j["command"] = "optimize";
    j["n"] = summary.n();
    j["k"] = summary.k();
    j["labels"] = window.labels();
    j["solutions"] = Json::array();
    for (const auto& s : solutions) {
        j["solutions"].push_back(rule_json(s));
    }

    report.table.header = {"rule", "parameter", "expected_return", "variance"};
    for (const auto& label : window.labels()) {
        report.table.header.push_back(label);
    }
    for (const auto& s : solutions) {
        std::vector<Cell> row{to_string(s.rule.kind), s.rule.parameter, s.expected_return, s.variance};
        for (Index i = 0; i < s.weights.size(); ++i) {
            row.emplace_back(s.weights(i));
        }
        report.table.rows.push_back(std::move(row));
    }
    return report;
}

Report frontier_report(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const MomentSummary summary = estimate_moments(window);
    const FrontierParams bayes = bayes_frontier(summary);
    const FrontierParams sample = sample_frontier(summary);
    const std::vector<double> grid =
        variance_grid(bayes.v_gmv, config.grid_points, config.grid_max_multiple);

    Report report;
    Json& j = report.json;
    j["command"] = "frontier";
    j["n"] = summary.n();
    j["k"] = summary.k();
    j["bayes"] = frontier_json(bayes);
    j["sample"] = frontier_json(sample);
    j["curve"] = Json::array();
    report.table.header = {"variance", "bayes_return", "sample_return"};
    for (double v : grid) {
        const double rb = frontier_return_at(bayes, v);
        const double rs = frontier_return_at(sample, v);
        Json point;
        point["variance"] = v;
        point["bayes_return"] = rb;
        point["sample_return"] = rs;
        j["curve"].push_back(std::move(point));
        report.table.rows.push_back({v, rb, rs});
    }
    return report;
}

struct SampleMoments {
    double mean;
    double variance;
    double skewness;
};

SampleMoments sample_moments(const std::vector<double>& values) {
    const auto b = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / b;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double x : values) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    const double variance = values.size() > 1 ? m2 / (b - 1.0) : 0.0;
    const double biased = m2 / b;
    const double skewness = biased > 0.0 ? (m3 / b) / std::pow(biased, 1.5) : 0.0;
    return {mean, variance, skewness};
}

void dump_draws(const std::filesystem::path& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open dump file '" + path.string() + "'");
    }
    for (double v : values) {
        out << format_double(v) << '\n';
    }
    out.close();
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
    }
}

Report sample_report(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const MomentSummary summary = estimate_moments(window);

    VectorXd weights;
    std::string weights_id;
    if (config.weights) {
        if (count_targets(config) != 0) {
            usage_error("--weights cannot be combined with an optimization target");
        }
        weights = Eigen::Map<const VectorXd>(config.weights->data(),
                                             static_cast<Index>(config.weights->size()));
        weights_id = "USER";
    } else if (count_targets(config) == 0) {
        weights = gmv_weights(summary).weights;
        weights_id = "GMV";
    } else {
        if (config.rule == RuleChoice::Both) {
            usage_error("sample draws one portfolio; choose --rule bayes or --rule sample");
        }
        const PortfolioSolution s = solve_rules(summary, config).front();
        weights = s.weights;
        weights_id = to_string(s.rule.kind);
    }

    const SamplerOptions options{config.threads};
    const PredictiveDraws draws =
        config.oracle
            ? oracle_draw_hierarchical(summary, weights, config.draws, config.seed, options, weights_id)
            : draw_predictive(summary, weights, config.draws, config.seed, options, weights_id);
    if (!config.dump_path.empty()) {
        dump_draws(config.dump_path, draws.values);
    }

    const SampleMoments mc = sample_moments(draws.values);
    const std::optional<double> c = try_bayes_coefficient(summary.k(), summary.n());
    const std::optional<double> analytic_variance =
        c ? std::optional<double>(*c * draws.scale2) : std::nullopt;
    std::optional<CredibleInterval> interval;
    if (draws.values.size() >= 100) {
        interval = credible_interval(draws, config.alpha);
    }

    Report report;
    Json& j = report.json;
    j["command"] = "sample";
    j["source"] = to_string(draws.source);
    j["seed"] = draws.seed;
    j["draws"] = draws.b;
    j["weights_id"] = draws.weights_id;
    j["weights"] = to_json(weights);
    j["analytic_mean"] = draws.location;
    j["analytic_variance"] = optional_number(analytic_variance);
    j["mc_mean"] = mc.mean;
    j["mc_variance"] = mc.variance;
    j["mc_skewness"] = mc.skewness;
    if (interval) {
        Json ci;
        ci["alpha"] = interval->alpha;
        ci["lower"] = interval->lower;
        ci["upper"] = interval->upper;
        ci["point"] = interval->point;
        j["interval"] = std::move(ci);
    } else {
        j["interval"] = nullptr;
    }

    const double nan = std::nan("");
    report.table.header = {"source", "seed", "draws", "weights_id", "analytic_mean",
                           "analytic_variance", "mc_mean", "mc_variance", "mc_skewness",
                           "alpha", "lower", "upper"};
    report.table.rows.push_back({to_string(draws.source), std::to_string(draws.seed),
                                 static_cast<std::int64_t>(draws.b), draws.weights_id,
                                 draws.location, analytic_variance.value_or(nan), mc.mean,
                                 mc.variance, mc.skewness, config.alpha,
                                 interval ? interval->lower : nan,
                                 interval ? interval->upper : nan});
    return report;
}

std::vector<double> default_interval_gammas() {
    std::vector<double> g;
    for (int i = 1; i <= 10; ++i) g.push_back(10.0 * i);
    return g;
}

Report interval_report_command(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const MomentSummary summary = estimate_moments(window);
    const std::vector<double> gammas =
        config.gammas.empty() ? default_interval_gammas() : config.gammas;
    const std::vector<IntervalRow> rows = interval_report(
        summary, gammas, config.alpha, config.draws, config.seed, SamplerOptions{config.threads});

    Report report;
    Json& j = report.json;
    j["command"] = "interval";
    j["n"] = summary.n();
    j["k"] = summary.k();
    j["alpha"] = config.alpha;
    j["draws"] = config.draws;
    j["seed"] = config.seed;
    j["rows"] = Json::array();
    report.table.header = {"gamma", "variance", "expected_return", "lower", "upper", "width"};
    for (const auto& r : rows) {
        Json row;
        row["gamma"] = r.gamma;
        row["variance"] = r.variance;
        row["expected_return"] = r.expected_return;
        row["lower"] = r.interval.lower;
        row["upper"] = r.interval.upper;
        row["width"] = r.interval.upper - r.interval.lower;
        j["rows"].push_back(std::move(row));
        report.table.rows.push_back({r.gamma, r.variance, r.expected_return, r.interval.lower,
                                     r.interval.upper, r.interval.upper - r.interval.lower});
    }
    return report;
}

Report compare_report(const RunConfig& config) {
    const ReturnsWindow window = load_window(config);
    const std::vector<double> gammas =
        config.gammas.empty() ? std::vector<double>{10.0, 25.0, 50.0, 100.0} : config.gammas;
    std::vector<long> counts = config.asset_counts;
    if (counts.empty()) {
        counts.push_back(static_cast<long>(window.k()));
    }

    Report report;
    Json& j = report.json;
    j["command"] = "compare";
    j["n"] = window.n();
    j["rows"] = Json::array();
    report.table.header = {"k",           "gamma",       "bayes_return", "bayes_variance",
                           "sample_return", "sample_variance", "r_gmv",  "bayes_v_gmv",
                           "sample_v_gmv", "bayes_slope", "sample_slope"};
    for (long count : counts) {
        if (count < 1 || count > static_cast<long>(window.k())) {
            usage_error("--assets entries must lie in [1, " + std::to_string(window.k()) + "]");
        }
        std::vector<Index> columns(static_cast<std::size_t>(count));
        std::iota(columns.begin(), columns.end(), Index{0});
        const MomentSummary summary = estimate_moments(window.select_assets(columns));
        const FrontierParams bayes = bayes_frontier(summary);
        const FrontierParams sample = sample_frontier(summary);
        for (double gamma : gammas) {
            const PortfolioSolution b = bayes_weights_gamma(summary, gamma);
            const PortfolioSolution s = sample_weights_gamma(summary, gamma);
            Json row;
            row["k"] = count;
            row["gamma"] = gamma;
            row["bayes_return"] = b.expected_return;
            row["bayes_variance"] = b.variance;
            row["sample_return"] = s.expected_return;
            row["sample_variance"] = s.variance;
            row["r_gmv"] = bayes.r_gmv;
            row["bayes_v_gmv"] = bayes.v_gmv;
            row["sample_v_gmv"] = sample.v_gmv;
            row["bayes_slope"] = bayes.slope;
            row["sample_slope"] = sample.slope;
            j["rows"].push_back(std::move(row));
            report.table.rows.push_back({static_cast<std::int64_t>(count), gamma, b.expected_return,
                                         b.variance, s.expected_return, s.variance, bayes.r_gmv,
                                         bayes.v_gmv, sample.v_gmv, bayes.slope, sample.slope});
        }
    }
    return report;
}

Report ratio_report(const RunConfig& config) {
    if (!(config.kn_max > 0.0 && config.kn_max < 1.0)) {
        usage_error("--kn-max must lie in (0, 1)");
    }
    Report report;
    Json& j = report.json;
    j["command"] = "ratio";
    j["kn_max"] = config.kn_max;
    j["rows"] = Json::array();
    report.table.header = {"n", "k", "k_over_n", "c", "d", "ratio"};
    for (long n : config.sample_sizes) {
        if (n < 4) {
            usage_error("--n entries must be at least 4");
        }
        for (long k = 1; k + 2 < n; ++k) {
            const double kn = static_cast<double>(k) / static_cast<double>(n);
            if (!(kn < config.kn_max)) {
                break;
            }
            const Coefficients co = coefficients(k, n);
            Json row;
            row["n"] = n;
            row["k"] = k;
            row["k_over_n"] = kn;
            row["c"] = co.c;
            row["d"] = co.d;
            row["ratio"] = co.c / co.d;
            j["rows"].push_back(std::move(row));
            report.table.rows.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(k),
                                         kn, co.c, co.d, co.c / co.d});
        }
    }
    return report;
}

void validate(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw Error(ErrorCode::InvalidAlpha, "--alpha must lie in (0, 1)");
    }
    if (config.draws < 1) {
        usage_error("--draws must be at least 1");
    }
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFiniteInput:
        case ErrorCode::MalformedCsv:
        case ErrorCode::EmptyInput:
        case ErrorCode::DuplicateLabels:
            return exit_code::malformed_input;
        case ErrorCode::SingularScatter:
        case ErrorCode::SingularCovariance:
        case ErrorCode::DegreesOfFreedom:
            return exit_code::degrees_of_freedom;
        case ErrorCode::DegenerateFrontier:
        case ErrorCode::InfeasibleVariance:
        case ErrorCode::BelowMinimumVariance:
            return exit_code::infeasible;
        case ErrorCode::IoError:
            return exit_code::io;
        case ErrorCode::NonPositiveGamma:
        case ErrorCode::InvalidWeights:
        case ErrorCode::InvalidAlpha:
        case ErrorCode::InsufficientDraws:
        case ErrorCode::InvalidArgument:
            return exit_code::usage;
    }
    return exit_code::usage;
}

Report build_report(const RunConfig& config) {
    validate(config);
    switch (config.command) {
        case Command::Estimate: return estimate_report(config);
        case Command::Optimize: return optimize_report(config);
        case Command::Frontier: return frontier_report(config);
        case Command::Sample: return sample_report(config);
        case Command::Interval: return interval_report_command(config);
        case Command::Compare: return compare_report(config);
        case Command::Ratio: return ratio_report(config);
    }
    usage_error("unknown command");
}

int run(const RunConfig& config, std::ostream& diagnostics) {
    try {
        emit_report(build_report(config), config.format, config.output_path);
        return exit_code::ok;
    } catch (const Error& e) {
        diagnostics << "bayesmv: error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        diagnostics << "bayesmv: internal error: " << e.what() << '\n';
        return exit_code::usage;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& diagnostics) {
    CLI::App app{"Bayesian mean-variance portfolio selection under parameter uncertainty", "bayesmv"};
    app.require_subcommand(1, 1);

    RunConfig config;
    const std::map<std::string, Command> commands{
        {"estimate", Command::Estimate}, {"optimize", Command::Optimize},
        {"frontier", Command::Frontier}, {"sample", Command::Sample},
        {"interval", Command::Interval}, {"compare", Command::Compare},
        {"ratio", Command::Ratio},
    };
    const std::map<std::string, std::string> descriptions{
        {"estimate", "sample mean, scatter matrix and the c/d coefficients"},
        {"optimize", "optimal weights for a risk aversion, target return or target variance"},
        {"frontier", "Bayesian and sample efficient frontiers on a variance grid"},
        {"sample", "posterior predictive draws of a portfolio return"},
        {"interval", "credible intervals of optimal portfolio returns over a gamma list"},
        {"compare", "Bayesian vs sample optimal portfolios over gamma and asset-count lists"},
        {"ratio", "table of c/d against k/n"},
    };
    for (const auto& [name, command] : commands) {
        app.add_subcommand(name, descriptions.at(name))->fallthrough();
    }

    double gamma = 0.0;
    double target_return = 0.0;
    double target_variance = 0.0;
    std::vector<double> weights;
    std::string seed_text;

    app.add_option("-i,--input", config.input_path, "returns (or prices) CSV file");
    app.add_flag("--prices", config.prices, "input holds prices; convert to simple returns");
    auto* gamma_opt = app.add_option("--gamma", gamma, "risk aversion coefficient");
    auto* r0_opt = app.add_option("--target-return", target_return, "target expected return R0");
    auto* v0_opt = app.add_option("--target-variance", target_variance, "target variance V0");
    auto* weights_opt = app.add_option("--weights", weights, "explicit weights for `sample`")
                            ->delimiter(',');
    app.add_option("--rule", config.rule, "bayes | sample | both")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, RuleChoice>{{"bayes", RuleChoice::Bayes},
                                              {"sample", RuleChoice::Sample},
                                              {"both", RuleChoice::Both}}),
                   "")
        ->option_text("RULE");
    app.add_option("--alpha", config.alpha, "credible interval level alpha");
    app.add_option("--draws", config.draws, "Monte Carlo draw count B");
    auto* seed_opt = app.add_option("--seed", seed_text, "64-bit RNG seed (fallback: BAYESMV_SEED)");
    app.add_option("--threads", config.threads, "sampler worker threads (0 = all cores)");
    app.add_flag("--oracle", config.oracle, "`sample` through the hierarchical posterior oracle");
    app.add_option("--dump", config.dump_path, "write raw draws, one per line");
    app.add_option("--grid-points", config.grid_points, "frontier variance grid size");
    app.add_option("--grid-max", config.grid_max_multiple, "grid upper end as a multiple of v_gmv");
    app.add_option("--gammas", config.gammas, "comma-separated gamma list")->delimiter(',');
    app.add_option("--assets", config.asset_counts, "comma-separated asset counts for `compare`")
        ->delimiter(',');
    app.add_option("--n", config.sample_sizes, "comma-separated sample sizes for `ratio`")
        ->delimiter(',');
    app.add_option("--kn-max", config.kn_max, "upper bound (exclusive) of k/n for `ratio`");
    app.add_option("--format", config.format, "json | csv")
        ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{
            {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}}), "")
        ->option_text("FORMAT");
    app.add_option("-o,--output", config.output_path, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out;
        const int code = app.exit(e, out, diagnostics);
        std::cout << out.str();
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    for (const auto& [name, command] : commands) {
        if (app.got_subcommand(name)) {
            config.command = command;
        }
    }
    if (gamma_opt->count() > 0) config.gamma = gamma;
    if (r0_opt->count() > 0) config.target_return = target_return;
    if (v0_opt->count() > 0) config.target_variance = target_variance;
    if (weights_opt->count() > 0) config.weights = weights;

    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("BAYESMV_SEED"); env != nullptr && *env != '\0') {
            seed_text = env;
        }
    }
    if (!seed_text.empty()) {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
        if (ec != std::errc() || ptr != seed_text.data() + seed_text.size()) {
            diagnostics << "bayesmv: error [InvalidArgument]: seed must be an unsigned 64-bit integer, got '"
                        << seed_text << "'\n";
            return exit_code::usage;
        }
        config.seed = seed;
    }
    return run(config, diagnostics);
}

}  // namespace bayesmv::cli
