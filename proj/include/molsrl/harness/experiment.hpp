#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "molsrl/ccs/types.hpp"
#include "molsrl/dol/dol.hpp"
#include "molsrl/harness/config.hpp"
#include "molsrl/momdp/model.hpp"

namespace molsrl::harness {

/// Output root: $MOLSRL_RUNS_DIR when set, otherwise ./runs.
std::filesystem::path runs_root();

/// Explicit model for DST configurations; nullopt for mc.
std::optional<momdp::MOMDPModel> explicit_model(const ExperimentConfig& config);

struct TrueCCS {
    ccs::PartialCCS ccs;
    std::string source;  // "exact" or "tabular-reference"
};

/// DST: exact planning. MC: union of `reference_runs` long tabular OLS runs,
/// pruned. MC references are cached as CSV under `cache_dir` when given.
TrueCCS true_ccs(const ExperimentConfig& config, const std::optional<std::filesystem::path>& cache_dir = {});

struct SeedRun {
    std::uint64_t seed = 0;
    dol::DolResult result;
    /// Max CCS Error after each solver call (index 0 = after the first).
    std::vector<double> errors;
    std::vector<double> error_weights;  // w1 of each maximiser
};

/// One OLS run for one seed, its RNG derived from (master_seed, seed).
/// Writes a run directory when `out_dir` is set.
SeedRun run_seed(const ExperimentConfig& config, std::uint64_t seed, const ccs::PartialCCS& truth,
                 const std::optional<std::filesystem::path>& out_dir = {});

struct ErrorCurvePoint {
    std::size_t iteration = 0;  // solver calls completed, from 1
    std::size_t episodes = 0;   // training episodes spent per run so far
    double mean = 0.0;
    double stddev = 0.0;        // population standard deviation over seeds
};

/// Per-iteration mean and spread over seeds. Runs that stopped early carry
/// their last error forward.
std::vector<ErrorCurvePoint> aggregate_errors(const std::vector<std::vector<double>>& per_seed,
                                              std::size_t episodes_per_iteration);

struct ExperimentResult {
    ExperimentConfig config;  // resolved
    TrueCCS truth;
    std::vector<SeedRun> runs;
    std::vector<ErrorCurvePoint> curve;
};

/// Runs every seed (up to `jobs` at a time) and writes
/// <out_dir>/{config.ini, true_ccs.csv, error_curve.csv, plot.json,
/// seed-<s>/...} when `out_dir` is set.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::optional<std::filesystem::path>& out_dir = {});

struct SweepPoint {
    std::size_t episodes = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> per_seed;
};

/// Final Max CCS Error for each per-iteration episode budget.
std::vector<SweepPoint> episodes_sweep(const ExperimentConfig& config, const std::vector<std::size_t>& budgets,
                                       const std::optional<std::filesystem::path>& out_dir = {});

void write_error_curve_csv(std::ostream& out, const std::vector<ErrorCurvePoint>& curve);
void write_errors_csv(std::ostream& out, const SeedRun& run, std::size_t episodes_per_iteration);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

/// plot.json describing every error_curve.csv / sweep.csv found under the
/// given experiment directories: file paths, axes and series labels.
void write_plot_description(const std::filesystem::path& out_file,
                            const std::vector<std::filesystem::path>& experiment_dirs);

}  // namespace molsrl::harness
