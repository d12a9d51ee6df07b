#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>

#include "molsrl/ccs/csv.hpp"
#include "molsrl/dol/run_dir.hpp"
#include "molsrl/harness/config.hpp"
#include "molsrl/harness/experiment.hpp"
#include "molsrl/planner/planner.hpp"

namespace fs = std::filesystem;
using namespace molsrl;
using harness::ExperimentConfig;

namespace {

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

struct CommonOptions {
    std::string config_file;
    std::string env;
    std::string alg;
    std::string seeds;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> master_seed;
    std::optional<std::size_t> episodes;
    std::optional<double> tau;
    std::optional<std::size_t> max_it;
    std::optional<std::size_t> jobs;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_alg) {
    cmd->add_option("--config", o.config_file, "INI file with [experiment], [env], [dqn] and [tabular] sections");
    cmd->add_option("--env", o.env, "mc | dst-raw | dst-image");
    if (with_alg) {
        cmd->add_option("--alg", o.alg, "dol | dol-fr | dol-pr | exact | tabular");
        cmd->add_option("--episodes", o.episodes, "training episodes per solver call");
        cmd->add_option("--tau", o.tau, "improvement threshold");
        cmd->add_option("--max-it", o.max_it, "maximum OLS iterations");
        cmd->add_option("--master-seed", o.master_seed, "seed from which per-run streams are derived");
        cmd->add_option("--jobs", o.jobs, "runs executed concurrently");
    }
    cmd->add_option("--out", o.out, "output directory (default: under $MOLSRL_RUNS_DIR or ./runs)");
}

ExperimentConfig build_config(const CommonOptions& o) {
    ExperimentConfig c;
    if (!o.config_file.empty()) c = harness::load_config(o.config_file);
    if (!o.env.empty()) c.env = harness::parse_env(o.env);
    if (!o.alg.empty()) c.algorithm = harness::parse_algorithm(o.alg);
    if (!o.seeds.empty()) c.seeds = harness::parse_seeds(o.seeds);
    if (o.seed) c.seeds = {*o.seed};
    if (o.master_seed) c.master_seed = *o.master_seed;
    if (o.episodes) c.episodes = *o.episodes;
    if (o.tau) c.tau = *o.tau;
    if (o.max_it) c.max_iterations = *o.max_it;
    if (o.jobs) c.jobs = *o.jobs;
    c.validate();
    return c;
}

fs::path output_dir(const CommonOptions& o, const std::string& fallback) {
    return o.out.empty() ? harness::runs_root() / fallback : fs::path(o.out);
}

void print_curve(const std::vector<harness::ErrorCurvePoint>& curve) {
    for (const auto& p : curve)
        std::cout << "iteration " << p.iteration << "  max CCS error " << p.mean << " (std " << p.stddev << ")\n";
}

int cmd_plan(const CommonOptions& o) {
    auto c = build_config(o);
    c.algorithm = harness::Algorithm::Exact;
    const auto model = harness::explicit_model(c);
    if (!model) throw ConfigError("plan needs an environment with an explicit model (dst-raw or dst-image)");
    const auto run = planner::exact_ccs_run(*model);
    const auto dir = output_dir(o, "plan-" + harness::to_string(c.env));
    dol::write_run_directory(dir, run, model->objective_count, "exact");
    std::cout << "exact CCS: " << run.ccs.size() << " vectors, " << run.solver_calls << " solver calls -> "
              << (dir / "ccs.csv").string() << '\n';
    return 0;
}

int cmd_train(const CommonOptions& o) {
    auto c = build_config(o);
    if (c.seeds.size() != 1) c.seeds = {c.seeds.front()};
    const auto seed = c.seeds.front();
    const auto dir = output_dir(o, c.id() + "-seed" + std::to_string(seed));
    const auto truth = harness::true_ccs(c.resolve(), harness::runs_root() / "reference");
    const auto run = harness::run_seed(c, seed, truth.ccs, dir);
    std::cout << "CCS: " << run.result.ccs.size() << " vectors after " << run.result.log.size()
              << " iterations; final max CCS error " << (run.errors.empty() ? 0.0 : run.errors.back()) << " -> "
              << dir.string() << '\n';
    return 0;
}

int cmd_experiment(const CommonOptions& o) {
    const auto c = build_config(o);
    const auto dir = output_dir(o, c.id());
    const auto result = harness::run_experiment(c, dir);
    print_curve(result.curve);
    std::cout << "-> " << (dir / "error_curve.csv").string() << '\n';
    return 0;
}

std::vector<double> read_error_column(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read " + file.string());
    std::string line;
    std::getline(in, line);
    if (line.rfind("iteration,episodes,max_ccs_error", 0) != 0) throw ConfigError("unexpected header in " + file.string());
    std::vector<double> errors;
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        for (int i = 0; i < 3 && std::getline(row, cell, ','); ++i) {
        }
        errors.push_back(std::stod(cell));
    }
    return errors;
}

int cmd_error_curve(const std::string& dir_text) {
    const fs::path dir = dir_text;
    const auto config = harness::load_config(dir / "config.ini").resolve();
    std::map<std::uint64_t, fs::path> files;
    const std::regex pattern("seed-([0-9]+)");
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const auto name = entry.path().filename().string();
        if (entry.is_directory() && std::regex_match(name, m, pattern) && fs::exists(entry.path() / "errors.csv"))
            files[std::stoull(m[1].str())] = entry.path() / "errors.csv";
    }
    if (files.empty()) throw ConfigError("no seed-*/errors.csv under " + dir.string());
    std::vector<std::vector<double>> per_seed;
    for (const auto& [seed, file] : files) per_seed.push_back(read_error_column(file));
    const auto curve = harness::aggregate_errors(
        per_seed, config.algorithm == harness::Algorithm::Exact ? 0 : config.episodes);
    std::ofstream out(dir / "error_curve.csv", std::ios::binary);
    harness::write_error_curve_csv(out, curve);
    print_curve(curve);
    return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& budgets_text) {
    auto c = build_config(o);
    std::vector<std::size_t> budgets;
    std::stringstream in(budgets_text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            budgets.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw ConfigError("bad episode budget '" + item + "'");
        }
    }
    const auto dir = output_dir(o, c.id() + "-sweep");
    const auto sweep = harness::episodes_sweep(c, budgets, dir);
    for (const auto& p : sweep)
        std::cout << "episodes " << p.episodes << "  final max CCS error " << p.mean << " (std " << p.stddev << ")\n";
    std::cout << "-> " << (dir / "sweep.csv").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective deep RL via optimistic linear support"};
    app.require_subcommand(0, 1);
    bool dump_defaults = false;
    app.add_flag("--dump-defaults", dump_defaults, "print the default configuration and exit");

    CommonOptions plan_o, train_o, exp_o, sweep_o;
    auto* plan = app.add_subcommand("plan", "exact CCS of an explicit model");
    add_common(plan, plan_o, false);

    auto* train = app.add_subcommand("train", "one OLS run for one seed");
    add_common(train, train_o, true);
    train->add_option("--seed", train_o.seed, "run seed");

    auto* experiment = app.add_subcommand("experiment", "OLS runs over several seeds with an averaged error curve");
    add_common(experiment, exp_o, true);
    experiment->add_option("--seeds", exp_o.seeds, "a count N (seeds 1..N) or a comma-separated list");

    std::string curve_dir;
    auto* curve = app.add_subcommand("error-curve", "recompute error_curve.csv from per-seed errors.csv files");
    curve->add_option("dir", curve_dir, "experiment directory")->required();

    std::string budgets = "500,1000,2000,4000";
    auto* sweep = app.add_subcommand("episodes-sweep", "final error for several per-iteration episode budgets");
    add_common(sweep, sweep_o, true);
    sweep->add_option("--seeds", sweep_o.seeds, "a count N (seeds 1..N) or a comma-separated list");
    sweep->add_option("--budgets", budgets, "comma-separated episode budgets");

    std::vector<std::string> plot_dirs;
    std::string plot_out = "plot.json";
    auto* plot = app.add_subcommand("plot", "write a plot description for experiment directories");
    plot->add_option("dirs", plot_dirs, "experiment or sweep directories")->required();
    plot->add_option("--out", plot_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigExit;
    }

    try {
        if (dump_defaults) {
            std::cout << "; Defaults. Automatic values, resolved per environment:\n"
                         ";   episodes = 0       4000 for mc, 6000 for dst-raw / dst-image\n"
                         ";   anneal = 0         half of episodes\n"
                         ";   tau = -1           0 for exact, 0.005 for learned solvers\n"
                         ";   tabular episodes = 0  same as [experiment] episodes\n\n";
            harness::write_config(std::cout, ExperimentConfig{});
            return 0;
        }
        if (plan->parsed()) return cmd_plan(plan_o);
        if (train->parsed()) return cmd_train(train_o);
        if (experiment->parsed()) return cmd_experiment(exp_o);
        if (curve->parsed()) return cmd_error_curve(curve_dir);
        if (sweep->parsed()) return cmd_sweep(sweep_o, budgets);
        if (plot->parsed()) {
            std::vector<fs::path> dirs(plot_dirs.begin(), plot_dirs.end());
            harness::write_plot_description(plot_out, dirs);
            std::cout << "-> " << plot_out << '\n';
            return 0;
        }
        std::cerr << app.help();
        return kConfigExit;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeExit;
    }
}
