#include "nocurl/bench.hpp"
#include "nocurl/csv.hpp"
#include "nocurl/dag_space.hpp"
#include "nocurl/metrics.hpp"
#include "nocurl/nocurl.hpp"
#include "nocurl/rng.hpp"
#include "nocurl/synth.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#ifndef NOCURL_VERSION
#define NOCURL_VERSION "dev"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out.write(text.data(), std::streamsize(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

nocurl::Scheme parse_scheme(const std::string& name) {
    nocurl::Scheme scheme;
    if (!nocurl::scheme_from_name(name, scheme))
        throw std::invalid_argument("unknown scheme '" + name + "'");
    return scheme;
}

nocurl::Noise parse_noise(const std::string& name) {
    nocurl::Noise noise;
    if (!nocurl::noise_from_name(name, noise))
        throw std::invalid_argument("unknown noise '" + name + "'");
    return noise;
}

nocurl::HKind parse_h(const std::string& name) {
    if (name == "poly") return nocurl::HKind::poly;
    if (name == "expm") return nocurl::HKind::expm;
    throw std::invalid_argument("unknown acyclicity measure '" + name + "'");
}

std::vector<std::string> variant_choices() {
    std::vector<std::string> names;
    for (nocurl::Variant v : nocurl::all_variants())
        names.push_back(nocurl::variant_name(v));
    names.push_back("notears");
    return names;
}

int default_jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

struct SimulateArgs {
    nocurl::Index d = 10;
    std::string scheme = "er";
    double k = 2.0;
    nocurl::Index n = 1000;
    std::string noise = "gaussian";
    std::uint64_t seed = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& args) {
    nocurl::GraphSpec spec;
    spec.d = args.d;
    spec.scheme = parse_scheme(args.scheme);
    spec.k = args.k;
    spec.seed = args.seed;
    nocurl::Matrix pattern =
        spec.scheme == nocurl::Scheme::er ? nocurl::gen_er(spec) : nocurl::gen_sf(spec);

    // Same derivation as a bench trial: the graph comes from the seed itself,
    // weights and noise from one stream mixed off it.
    nocurl::Rng draw(nocurl::Rng::mix(args.seed));
    nocurl::Matrix a0 = nocurl::assign_weights(pattern, draw);
    nocurl::Dataset data =
        nocurl::sample_linear_sem(a0, args.n, parse_noise(args.noise), draw);

    fs::path dir(args.out);
    fs::create_directories(dir);
    nocurl::write_matrix_csv(data.x(), dir / "X.csv");
    nocurl::write_matrix_csv(a0, dir / "A_true.csv");

    json meta = {{"format_version", kFormatVersion},
                 {"generator_version", NOCURL_VERSION},
                 {"d", args.d},
                 {"scheme", args.scheme},
                 {"k", args.k},
                 {"n", args.n},
                 {"noise", args.noise},
                 {"seed", args.seed},
                 {"edges", int((a0.array() != 0.0).count())}};
    write_text(dir / "meta.json", meta.dump(2) + "\n");
    return 0;
}

struct LearnArgs {
    std::string data;
    std::string variant = "nocurl2";
    std::vector<double> lambdas;
    double eps = 0.3;
    std::string h = "poly";
    std::uint64_t seed = 0;
    std::string out;
};

json result_to_json(const nocurl::LearnResult& res, const std::string& tag,
                    const std::string& h) {
    json iterations = json::array();
    json evals = json::array();
    json stops = json::array();
    for (const nocurl::OptimReport& rep : res.optim_reports) {
        iterations.push_back(rep.iterations);
        evals.push_back(rep.function_evals);
        stops.push_back(nocurl::stop_reason_name(rep.converged_by));
    }
    json out = {{"format_version", kFormatVersion},
                {"variant", tag},
                {"h", h},
                {"lambdas", res.lambdas},
                {"threshold", res.final_threshold},
                {"final_h", res.final_h},
                {"wall_time_seconds", res.wall_time},
                {"optim_iterations", iterations},
                {"optim_function_evals", evals},
                {"optim_stop_reasons", stops}};
    if (!res.rho_trace.empty()) {
        out["rho_trace"] = res.rho_trace;
        out["alpha_trace"] = res.alpha_trace;
        out["h_trace"] = res.h_trace;
    }
    return out;
}

int run_learn(const LearnArgs& args) {
    nocurl::Dataset data(nocurl::read_matrix_csv(args.data));
    nocurl::HKind h_kind = parse_h(args.h);

    nocurl::LearnResult res;
    if (args.variant == "notears") {
        res = nocurl::notears_baseline(data, h_kind, args.eps, nocurl::OptimOptions{});
    } else {
        std::optional<nocurl::Variant> v = nocurl::variant_from_name(args.variant);
        if (!v) throw std::invalid_argument("unknown variant '" + args.variant + "'");
        nocurl::NoCurlConfig config;
        config.variant = *v;
        config.lambdas = args.lambdas;
        config.threshold_eps = args.eps;
        config.h_kind = h_kind;
        config.seed = args.seed;
        res = nocurl::nocurl_run(data, config);
    }
    if (!nocurl::is_dag(res.a_hat))
        throw std::runtime_error("learned result is not acyclic");

    fs::path dir(args.out);
    fs::create_directories(dir);
    nocurl::write_matrix_csv(res.a_hat, dir / "A_hat.csv");
    write_text(dir / "result.json",
               result_to_json(res, args.variant, args.h).dump(2) + "\n");
    return 0;
}

struct EvalArgs {
    std::string pred;
    std::string truth;
    std::string data;
    std::string out;
};

int run_eval(const EvalArgs& args) {
    nocurl::Matrix a_hat = nocurl::read_matrix_csv(args.pred);
    nocurl::Matrix a_true = nocurl::read_matrix_csv(args.truth);
    nocurl::ShdReport report = nocurl::shd(a_hat, a_true);

    json out = {{"format_version", kFormatVersion},
                {"shd", report.shd},
                {"extra", report.extra},
                {"missing", report.missing},
                {"reverse", report.reverse}};
    if (!args.data.empty()) {
        nocurl::Dataset data(nocurl::read_matrix_csv(args.data));
        out["delta_f"] = nocurl::delta_f(a_hat, a_true, data);
    }
    std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!args.out.empty()) write_text(args.out, text);
    return 0;
}

struct BenchArgs {
    std::vector<nocurl::Index> ds = {10};
    std::string scheme = "er";
    double k = 2.0;
    std::string noise = "gaussian";
    nocurl::Index n = 1000;
    int trials = 10;
    std::vector<std::string> variants = {"nocurl2"};
    std::uint64_t seed = 0;
    int jobs = default_jobs();
    double eps = 0.3;
    std::string h = "poly";
    std::string out;
};

int run_bench(const BenchArgs& args) {
    nocurl::BenchConfig config;
    config.ds = args.ds;
    config.scheme = parse_scheme(args.scheme);
    config.k = args.k;
    config.noise = parse_noise(args.noise);
    config.n = args.n;
    config.trials = args.trials;
    config.variants = args.variants;
    config.master_seed = args.seed;
    config.jobs = args.jobs;
    config.threshold_eps = args.eps;
    config.h_kind = parse_h(args.h);

    nocurl::BenchResult result = nocurl::bench_run(config);

    fs::path dir(args.out);
    fs::create_directories(dir);
    write_text(dir / "results.csv", nocurl::bench_rows_to_csv(result.rows));
    write_text(dir / "summary.json",
               nocurl::bench_summary_json(config, result.rows));

    if (result.any_failed) {
        int failed = 0;
        for (const nocurl::BenchRow& row : result.rows)
            if (!row.error.empty()) ++failed;
        std::cerr << failed << " of " << result.rows.size()
                  << " trials failed; see the error column\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DAG structure learning via potential/flow decomposition"};
    // --h is a real option below, so help is long-form only.
    app.set_help_flag("--help", "Print help and exit");
    app.set_version_flag("--version", NOCURL_VERSION);
    app.require_subcommand(1);
    // Options can come from an INI/TOML file with one section per subcommand,
    // e.g. [bench] followed by key=value lines.
    app.set_config("--config", "", "Read options from an INI/TOML file");

    std::vector<std::string> variants = variant_choices();

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Sample a random weighted DAG and a linear dataset from it");
    simulate->fallthrough();  // lets --config appear after the subcommand
    simulate->add_option("--d", sim.d, "Number of variables")->check(CLI::Range(2, 100000));
    simulate->add_option("--scheme", sim.scheme, "Graph family")
        ->check(CLI::IsMember({"er", "sf"}));
    simulate->add_option("--k", sim.k, "Expected mean degree");
    simulate->add_option("--n", sim.n, "Number of samples")->check(CLI::PositiveNumber);
    simulate->add_option("--noise", sim.noise, "Noise distribution")
        ->check(CLI::IsMember({"gaussian", "gumbel", "none"}));
    simulate->add_option("--seed", sim.seed, "Seed for graph, weights and noise");
    simulate->add_option("--out", sim.out, "Output directory")->required();

    LearnArgs learn;
    CLI::App* learn_cmd =
        app.add_subcommand("learn", "Fit a DAG to a dataset given as CSV");
    learn_cmd->fallthrough();
    learn_cmd->add_option("--data", learn.data, "Input X.csv (one sample per row)")
        ->required();
    learn_cmd->add_option("--variant", learn.variant, "Learner variant")
        ->check(CLI::IsMember(variants));
    learn_cmd->add_option("--lambda", learn.lambdas,
                          "Warm-up penalty weight, repeatable (default per variant)");
    learn_cmd->add_option("--eps", learn.eps, "Final edge threshold")
        ->check(CLI::PositiveNumber);
    learn_cmd->add_option("--h", learn.h, "Acyclicity measure")
        ->check(CLI::IsMember({"poly", "expm"}));
    learn_cmd->add_option("--seed", learn.seed, "Seed for randomized variants");
    learn_cmd->add_option("--out", learn.out, "Output directory")->required();

    EvalArgs eval;
    CLI::App* eval_cmd = app.add_subcommand(
        "eval", "Compare a learned graph against the ground truth");
    eval_cmd->fallthrough();
    eval_cmd->add_option("--pred", eval.pred, "Learned A_hat.csv")->required();
    eval_cmd->add_option("--truth", eval.truth, "Ground-truth A_true.csv")->required();
    eval_cmd->add_option("--data", eval.data,
                         "Optional X.csv; adds the score difference delta_f");
    eval_cmd->add_option("--out", eval.out, "Also write the JSON report here");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Run repeated simulate/learn/eval trials and aggregate");
    bench_cmd->configurable();
    bench_cmd->fallthrough();
    bench_cmd->add_option("--d", bench.ds, "Graph sizes to sweep, repeatable");
    bench_cmd->add_option("--scheme", bench.scheme, "Graph family")
        ->check(CLI::IsMember({"er", "sf"}));
    bench_cmd->add_option("--k", bench.k, "Expected mean degree");
    bench_cmd->add_option("--noise", bench.noise, "Noise distribution")
        ->check(CLI::IsMember({"gaussian", "gumbel", "none"}));
    bench_cmd->add_option("--n", bench.n, "Samples per trial")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--trials", bench.trials, "Trials per variant and size")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--variants", bench.variants, "Variants to compare")
        ->delimiter(',');
    bench_cmd->add_option("--seed", bench.seed, "Master seed");
    bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")
        ->envname("NOCURL_JOBS")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--eps", bench.eps, "Final edge threshold")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--h", bench.h, "Acyclicity measure")
        ->check(CLI::IsMember({"poly", "expm"}));
    bench_cmd->add_option("--out", bench.out, "Output directory")->required();

    int rc = 0;
    simulate->callback([&] { rc = run_simulate(sim); });
    learn_cmd->callback([&] { rc = run_learn(learn); });
    eval_cmd->callback([&] { rc = run_eval(eval); });
    bench_cmd->callback([&] { rc = run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
