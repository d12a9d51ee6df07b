#include "molsrl/harness/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>

#include "molsrl/ccs/csv.hpp"
#include "molsrl/ccs/envelope.hpp"
#include "molsrl/dol/run_dir.hpp"
#include "molsrl/momdp/deep_sea_treasure.hpp"
#include "molsrl/planner/planner.hpp"
#include "molsrl/solver/tabular.hpp"

namespace molsrl::harness {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kReferenceStream = 0x7ab1e;

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string reference_key(const ExperimentConfig& c) {
    std::ostringstream key;
    key << to_string(c.env) << '|' << c.horizon << '|' << ccs::format_double(c.gamma) << '|' << c.mc_bins << '|'
        << c.mc_random_start << '|' << ccs::format_double(c.alpha) << '|' << c.reference_episodes << '|'
        << c.reference_runs << '|' << c.grid_points;
    std::ostringstream name;
    name << to_string(c.env) << '-' << std::hex << fnv1a(key.str()) << ".csv";
    return name.str();
}

ccs::PartialCCS mc_reference(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.algorithm = Algorithm::Tabular;
    c.tabular_episodes = config.reference_episodes;
    c.anneal = config.reference_episodes / 2;
    c.episodes = config.reference_episodes;
    const auto env = make_environment(c);
    dol::DolConfig dc;
    dc.tau = 0.0;
    dc.max_iterations = 30;
    std::vector<ccs::ValueVector> pooled;
    for (std::size_t r = 0; r < config.reference_runs; ++r) {
        solver::TabularSolver solver(*env, make_tabular_config(c));
        Rng rng = derive_rng(kReferenceStream, r);
        const auto result = dol::run_dol(solver, dc, rng);
        pooled.insert(pooled.end(), result.ccs.begin(), result.ccs.end());
    }
    return ccs::prune(pooled);
}

double population_std(const std::vector<double>& xs, double mean) {
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size()));
}

void write_learning_curve(std::ostream& out, const dol::DolResult& result) {
    out << "iteration,episode,epsilon,loss,scalarised_return\n";
    for (const auto& rec : result.log)
        for (const auto& p : rec.curve)
            out << rec.iteration + 1 << ',' << p.episode << ',' << ccs::format_double(p.epsilon) << ','
                << ccs::format_double(p.loss) << ',' << ccs::format_double(p.scalarised_return) << '\n';
}

template <typename Job>
auto run_jobs(std::size_t count, std::size_t jobs, Job job) {
    using Result = decltype(job(std::size_t{0}));
    std::vector<Result> out(count);
    for (std::size_t start = 0; start < count; start += jobs) {
        std::vector<std::future<Result>> pending;
        const std::size_t end = std::min(count, start + jobs);
        for (std::size_t i = start; i < end; ++i)
            pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, job, i));
        for (std::size_t i = start; i < end; ++i) out[i] = pending[i - start].get();
    }
    return out;
}

}  // namespace

fs::path runs_root() {
    if (const char* env = std::getenv("MOLSRL_RUNS_DIR"); env != nullptr && *env != '\0') return env;
    return "runs";
}

std::optional<momdp::MOMDPModel> explicit_model(const ExperimentConfig& config) {
    if (config.env == EnvKind::MountainCar) return std::nullopt;
    momdp::DstConfig d;
    d.horizon = config.horizon;
    d.gamma = config.gamma;
    const auto map = config.dst_map.empty() ? momdp::DstMap::classic() : momdp::DstMap::load(config.dst_map);
    return momdp::explicit_model(map, d).model;
}

TrueCCS true_ccs(const ExperimentConfig& config, const std::optional<fs::path>& cache_dir) {
    if (auto model = explicit_model(config)) return {planner::exact_ccs(*model), "exact"};
    const auto c = config.resolve();
    std::optional<fs::path> cache;
    if (cache_dir) cache = *cache_dir / reference_key(c);
    if (cache && fs::exists(*cache)) {
        std::ifstream in(*cache);
        return {ccs::read_ccs_csv(in), "tabular-reference"};
    }
    TrueCCS truth{mc_reference(c), "tabular-reference"};
    if (cache) {
        fs::create_directories(cache->parent_path());
        auto out = open_for_write(*cache);
        ccs::write_ccs_csv(out, truth.ccs, truth.source);
    }
    return truth;
}

SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed, const ccs::PartialCCS& truth,
                 const std::optional<fs::path>& out_dir) {
    const auto c = config.resolve();
    c.validate();
    auto solver = make_solver(c);
    Rng rng = derive_rng(c.master_seed, seed);
    SeedRun run;
    run.seed = seed;
    try {
        run.result = dol::run_dol(*solver, make_dol_config(c), rng);
    } catch (const std::exception& e) {
        throw std::runtime_error("seed " + std::to_string(seed) + ": " + e.what());
    }
    for (const auto& rec : run.result.log) {
        const auto err = planner::max_ccs_error(truth, rec.ccs, c.grid_points);
        run.errors.push_back(err.value);
        run.error_weights.push_back(err.weight[0]);
    }
    if (out_dir) {
        const std::string source = c.algorithm == Algorithm::Exact ? "exact" : to_string(c.algorithm);
        dol::write_run_directory(*out_dir, run.result, solver->objective_count(), source);
        {
            auto out = open_for_write(*out_dir / "config.ini");
            ExperimentConfig single = c;
            single.seeds = {seed};
            write_config(out, single);
        }
        {
            auto out = open_for_write(*out_dir / "errors.csv");
            write_errors_csv(out, run, c.algorithm == Algorithm::Exact ? 0 : c.episodes);
        }
        if (c.learned()) {
            auto out = open_for_write(*out_dir / "learning_curve.csv");
            write_learning_curve(out, run.result);
        }
    }
    return run;
}

std::vector<ErrorCurvePoint> aggregate_errors(const std::vector<std::vector<double>>& per_seed,
                                              std::size_t episodes_per_iteration) {
    std::size_t length = 0;
    for (const auto& errors : per_seed) length = std::max(length, errors.size());
    std::vector<ErrorCurvePoint> curve;
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<double> xs;
        for (const auto& errors : per_seed)
            if (!errors.empty()) xs.push_back(errors[std::min(i, errors.size() - 1)]);
        if (xs.empty()) continue;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        curve.push_back({i + 1, (i + 1) * episodes_per_iteration, mean, population_std(xs, mean)});
    }
    return curve;
}

void write_error_curve_csv(std::ostream& out, const std::vector<ErrorCurvePoint>& curve) {
    out << "iteration,episodes,mean,std\n";
    for (const auto& p : curve)
        out << p.iteration << ',' << p.episodes << ',' << ccs::format_double(p.mean) << ','
            << ccs::format_double(p.stddev) << '\n';
}

void write_errors_csv(std::ostream& out, const SeedRun& run, std::size_t episodes_per_iteration) {
    out << "iteration,episodes,max_ccs_error,argmax_w1\n";
    for (std::size_t i = 0; i < run.errors.size(); ++i)
        out << i + 1 << ',' << (i + 1) * episodes_per_iteration << ',' << ccs::format_double(run.errors[i]) << ','
            << ccs::format_double(run.error_weights[i]) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep) {
    out << "episodes,mean,std";
    const std::size_t seeds = sweep.empty() ? 0 : sweep.front().per_seed.size();
    for (std::size_t s = 0; s < seeds; ++s) out << ",run" << s + 1;
    out << '\n';
    for (const auto& p : sweep) {
        out << p.episodes << ',' << ccs::format_double(p.mean) << ',' << ccs::format_double(p.stddev);
        for (double x : p.per_seed) out << ',' << ccs::format_double(x);
        out << '\n';
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::optional<fs::path>& out_dir) {
    config.validate();
    ExperimentResult result;
    result.config = config.resolve();
    const auto& c = result.config;
    result.truth = true_ccs(c, runs_root() / "reference");

    if (out_dir) {
        fs::create_directories(*out_dir);
        auto cfg = open_for_write(*out_dir / "config.ini");
        write_config(cfg, c);
        auto truth = open_for_write(*out_dir / "true_ccs.csv");
        ccs::write_ccs_csv(truth, result.truth.ccs, result.truth.source);
    }

    result.runs = run_jobs(c.seeds.size(), c.jobs, [&](std::size_t i) {
        std::optional<fs::path> dir;
        if (out_dir) dir = *out_dir / ("seed-" + std::to_string(c.seeds[i]));
        return run_seed(c, c.seeds[i], result.truth.ccs, dir);
    });

    std::vector<std::vector<double>> per_seed;
    for (const auto& run : result.runs) per_seed.push_back(run.errors);
    result.curve = aggregate_errors(per_seed, c.algorithm == Algorithm::Exact ? 0 : c.episodes);

    if (out_dir) {
        auto out = open_for_write(*out_dir / "error_curve.csv");
        write_error_curve_csv(out, result.curve);
        out.close();
        write_plot_description(*out_dir / "plot.json", {*out_dir});
    }
    return result;
}

std::vector<SweepPoint> episodes_sweep(const ExperimentConfig& config, const std::vector<std::size_t>& budgets,
                                       const std::optional<fs::path>& out_dir) {
    if (budgets.empty()) throw ConfigError("episodes sweep needs at least one budget");
    std::vector<SweepPoint> sweep;
    for (std::size_t budget : budgets) {
        if (budget == 0) throw ConfigError("episode budgets must be positive");
        ExperimentConfig c = config;
        c.episodes = budget;
        c.anneal = 0;
        c.tabular_episodes = 0;
        std::optional<fs::path> dir;
        if (out_dir) dir = *out_dir / ("episodes-" + std::to_string(budget));
        const auto result = run_experiment(c, dir);
        SweepPoint p;
        p.episodes = budget;
        for (const auto& run : result.runs) p.per_seed.push_back(run.errors.empty() ? 0.0 : run.errors.back());
        for (double x : p.per_seed) p.mean += x;
        p.mean /= static_cast<double>(p.per_seed.size());
        p.stddev = population_std(p.per_seed, p.mean);
        sweep.push_back(std::move(p));
    }
    if (out_dir) {
        auto out = open_for_write(*out_dir / "sweep.csv");
        write_sweep_csv(out, sweep);
        out.close();
        write_plot_description(*out_dir / "plot.json", {*out_dir});
    }
    return sweep;
}

void write_plot_description(const fs::path& out_file, const std::vector<fs::path>& experiment_dirs) {
    using nlohmann::json;
    json by_iteration = {{"id", "error-vs-iteration"},
                         {"title", "Max CCS Error per OLS iteration"},
                         {"x", {{"column", "iteration"}, {"label", "iteration"}}},
                         {"y", {{"column", "mean"}, {"label", "max CCS error"}}},
                         {"band", "std"},
                         {"series", json::array()}};
    json by_episodes = by_iteration;
    by_episodes["id"] = "error-vs-episodes";
    by_episodes["title"] = "Max CCS Error per training episodes";
    by_episodes["x"] = {{"column", "episodes"}, {"label", "training episodes"}};
    json sweep = {{"id", "episodes-sweep"},
                  {"title", "Final Max CCS Error per episode budget"},
                  {"x", {{"column", "episodes"}, {"label", "episodes per iteration"}}},
                  {"y", {{"column", "mean"}, {"label", "final max CCS error"}}},
                  {"band", "std"},
                  {"series", json::array()}};
    const auto base = out_file.parent_path();
    for (const auto& dir : experiment_dirs) {
        const std::string label = fs::absolute(dir).lexically_normal().filename().string();
        const auto rel = [&](const fs::path& p) { return p.lexically_relative(base.empty() ? "." : base).string(); };
        if (fs::exists(dir / "error_curve.csv")) {
            json s = {{"label", label}, {"file", rel(dir / "error_curve.csv")}};
            by_iteration["series"].push_back(s);
            by_episodes["series"].push_back(s);
        }
        if (fs::exists(dir / "sweep.csv"))
            sweep["series"].push_back({{"label", label}, {"file", rel(dir / "sweep.csv")}});
    }
    json doc = {{"figures", json::array()}};
    for (auto* fig : {&by_iteration, &by_episodes, &sweep})
        if (!(*fig)["series"].empty()) doc["figures"].push_back(*fig);
    auto out = open_for_write(out_file);
    out << doc.dump(2) << '\n';
}

}  // namespace molsrl::harness
