#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "molsrl/dol/dol.hpp"
#include "molsrl/momdp/environment.hpp"
#include "molsrl/nn/qnetwork.hpp"
#include "molsrl/solver/deep_q.hpp"
#include "molsrl/solver/tabular.hpp"

namespace molsrl::harness {

enum class EnvKind { MountainCar, DstRaw, DstImage };
enum class Algorithm { Dol, DolFr, DolPr, Exact, Tabular };

std::string to_string(EnvKind env);
std::string to_string(Algorithm alg);
/// mc | dst-raw | dst-image. Throws ConfigError otherwise.
EnvKind parse_env(const std::string& text);
/// dol | dol-fr | dol-pr | exact | tabular. Throws ConfigError otherwise.
Algorithm parse_algorithm(const std::string& text);

/// Everything one experiment needs. Zero-valued "auto" fields are resolved
/// per environment by resolve().
struct ExperimentConfig {
    // [experiment]
    std::string name;  // empty: derived from env and algorithm
    EnvKind env = EnvKind::DstRaw;
    Algorithm algorithm = Algorithm::DolPr;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::size_t episodes = 0;  // per solver call; 0: 4000 for mc, 6000 for dst
    std::size_t anneal = 0;    // 0: half of episodes
    double tau = -1.0;         // negative: 0 for exact, 0.005 otherwise
    std::size_t max_iterations = 30;
    std::size_t grid_points = 10001;
    std::size_t jobs = 1;

    // [env]
    int horizon = 200;
    double gamma = 0.97;
    std::string dst_map;  // empty: bundled map
    bool mc_random_start = false;
    std::size_t mc_bins = 40;

    // [dqn]
    double learning_rate = 1e-3;
    std::size_t parallel_episodes = 32;
    std::size_t minibatch = 32;
    std::size_t replay_capacity = 10000;
    std::size_t target_sync = 100;
    double epsilon_start = 1.0;
    double epsilon_end = 0.05;
    double clip_norm = 0.0;
    std::size_t updates_per_step = 1;
    double reward_scale = 100.0;
    bool zero_head = true;
    std::vector<std::size_t> hidden{100};
    std::vector<std::size_t> conv_channels{16, 32};

    // [tabular]
    double alpha = 0.1;
    /// Start tables at an upper bound on per-step rewards instead of zero.
    bool optimistic = true;
    std::size_t tabular_episodes = 0;  // 0: same as episodes
    std::size_t reference_episodes = 100000;
    std::size_t reference_runs = 3;

    /// Copy with every automatic field filled in.
    ExperimentConfig resolve() const;
    /// Throws ConfigError on out-of-range values or unsupported combinations.
    void validate() const;
    bool learned() const { return algorithm != Algorithm::Exact; }
    std::string id() const;
};

/// Reads an INI file with [experiment], [env], [dqn] and [tabular]
/// sections on top of `base`. Unknown keys are rejected.
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
/// Writes the config in the format load_config reads.
void write_config(std::ostream& out, const ExperimentConfig& config);

/// "5" means seeds 1..5; "3,7,9" is an explicit list.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

std::unique_ptr<momdp::Environment> make_environment(const ExperimentConfig& config);
nn::ArchitectureTemplate make_architecture(const ExperimentConfig& config);
solver::DeepQConfig make_deep_q_config(const ExperimentConfig& config);
solver::TabularConfig make_tabular_config(const ExperimentConfig& config);
dol::DolConfig make_dol_config(const ExperimentConfig& config);
/// Solver for the configured algorithm; the exact solver needs a DST.
std::unique_ptr<solver::ScalarisedSolver> make_solver(const ExperimentConfig& config);

}  // namespace molsrl::harness
