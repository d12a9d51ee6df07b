#include "molsrl/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "molsrl/ccs/csv.hpp"
#include "molsrl/momdp/deep_sea_treasure.hpp"
#include "molsrl/momdp/mountain_car.hpp"
#include "molsrl/planner/planner.hpp"

namespace molsrl::harness {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !(in >> std::ws).eof()) throw ConfigError("bad value for " + key + ": '" + text + "'");
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("bad boolean for " + key + ": '" + text + "'");
}

std::vector<std::size_t> parse_sizes(const std::string& key, const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_number<std::size_t>(key, item));
    return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Field {
    std::string section;
    std::string key;
    Setter set;
    Getter get;
};

std::string fmt(double x) { return ccs::format_double(x); }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        {"experiment", "name", [](auto& c, const auto& v) { c.name = v; }, [](const auto& c) { return c.name; }},
        {"experiment", "env", [](auto& c, const auto& v) { c.env = parse_env(v); },
         [](const auto& c) { return to_string(c.env); }},
        {"experiment", "algorithm", [](auto& c, const auto& v) { c.algorithm = parse_algorithm(v); },
         [](const auto& c) { return to_string(c.algorithm); }},
        {"experiment", "master_seed",
         [](auto& c, const auto& v) { c.master_seed = parse_number<std::uint64_t>("master_seed", v); },
         [](const auto& c) { return std::to_string(c.master_seed); }},
        {"experiment", "seeds", [](auto& c, const auto& v) { c.seeds = parse_seeds(v); },
         [](const auto& c) { return join(c.seeds); }},
        {"experiment", "episodes",
         [](auto& c, const auto& v) { c.episodes = parse_number<std::size_t>("episodes", v); },
         [](const auto& c) { return std::to_string(c.episodes); }},
        {"experiment", "anneal", [](auto& c, const auto& v) { c.anneal = parse_number<std::size_t>("anneal", v); },
         [](const auto& c) { return std::to_string(c.anneal); }},
        {"experiment", "tau", [](auto& c, const auto& v) { c.tau = parse_number<double>("tau", v); },
         [](const auto& c) { return fmt(c.tau); }},
        {"experiment", "max_iterations",
         [](auto& c, const auto& v) { c.max_iterations = parse_number<std::size_t>("max_iterations", v); },
         [](const auto& c) { return std::to_string(c.max_iterations); }},
        {"experiment", "grid_points",
         [](auto& c, const auto& v) { c.grid_points = parse_number<std::size_t>("grid_points", v); },
         [](const auto& c) { return std::to_string(c.grid_points); }},
        {"experiment", "jobs", [](auto& c, const auto& v) { c.jobs = parse_number<std::size_t>("jobs", v); },
         [](const auto& c) { return std::to_string(c.jobs); }},

        {"env", "horizon", [](auto& c, const auto& v) { c.horizon = parse_number<int>("horizon", v); },
         [](const auto& c) { return std::to_string(c.horizon); }},
        {"env", "gamma", [](auto& c, const auto& v) { c.gamma = parse_number<double>("gamma", v); },
         [](const auto& c) { return fmt(c.gamma); }},
        {"env", "dst_map", [](auto& c, const auto& v) { c.dst_map = v; }, [](const auto& c) { return c.dst_map; }},
        {"env", "mc_random_start",
         [](auto& c, const auto& v) { c.mc_random_start = parse_bool("mc_random_start", v); },
         [](const auto& c) { return std::string(c.mc_random_start ? "true" : "false"); }},
        {"env", "mc_bins", [](auto& c, const auto& v) { c.mc_bins = parse_number<std::size_t>("mc_bins", v); },
         [](const auto& c) { return std::to_string(c.mc_bins); }},

        {"dqn", "learning_rate",
         [](auto& c, const auto& v) { c.learning_rate = parse_number<double>("learning_rate", v); },
         [](const auto& c) { return fmt(c.learning_rate); }},
        {"dqn", "parallel_episodes",
         [](auto& c, const auto& v) { c.parallel_episodes = parse_number<std::size_t>("parallel_episodes", v); },
         [](const auto& c) { return std::to_string(c.parallel_episodes); }},
        {"dqn", "minibatch", [](auto& c, const auto& v) { c.minibatch = parse_number<std::size_t>("minibatch", v); },
         [](const auto& c) { return std::to_string(c.minibatch); }},
        {"dqn", "replay_capacity",
         [](auto& c, const auto& v) { c.replay_capacity = parse_number<std::size_t>("replay_capacity", v); },
         [](const auto& c) { return std::to_string(c.replay_capacity); }},
        {"dqn", "target_sync",
         [](auto& c, const auto& v) { c.target_sync = parse_number<std::size_t>("target_sync", v); },
         [](const auto& c) { return std::to_string(c.target_sync); }},
        {"dqn", "epsilon_start",
         [](auto& c, const auto& v) { c.epsilon_start = parse_number<double>("epsilon_start", v); },
         [](const auto& c) { return fmt(c.epsilon_start); }},
        {"dqn", "epsilon_end", [](auto& c, const auto& v) { c.epsilon_end = parse_number<double>("epsilon_end", v); },
         [](const auto& c) { return fmt(c.epsilon_end); }},
        {"dqn", "clip_norm", [](auto& c, const auto& v) { c.clip_norm = parse_number<double>("clip_norm", v); },
         [](const auto& c) { return fmt(c.clip_norm); }},
        {"dqn", "updates_per_step",
         [](auto& c, const auto& v) { c.updates_per_step = parse_number<std::size_t>("updates_per_step", v); },
         [](const auto& c) { return std::to_string(c.updates_per_step); }},
        {"dqn", "reward_scale",
         [](auto& c, const auto& v) { c.reward_scale = parse_number<double>("reward_scale", v); },
         [](const auto& c) { return fmt(c.reward_scale); }},
        {"dqn", "zero_head", [](auto& c, const auto& v) { c.zero_head = parse_bool("zero_head", v); },
         [](const auto& c) { return std::string(c.zero_head ? "true" : "false"); }},
        {"dqn", "hidden", [](auto& c, const auto& v) { c.hidden = parse_sizes("hidden", v); },
         [](const auto& c) { return join(c.hidden); }},
        {"dqn", "conv_channels",
         [](auto& c, const auto& v) { c.conv_channels = parse_sizes("conv_channels", v); },
         [](const auto& c) { return join(c.conv_channels); }},

        {"tabular", "alpha", [](auto& c, const auto& v) { c.alpha = parse_number<double>("alpha", v); },
         [](const auto& c) { return fmt(c.alpha); }},
        {"tabular", "optimistic", [](auto& c, const auto& v) { c.optimistic = parse_bool("optimistic", v); },
         [](const auto& c) { return std::string(c.optimistic ? "true" : "false"); }},
        {"tabular", "episodes",
         [](auto& c, const auto& v) { c.tabular_episodes = parse_number<std::size_t>("tabular episodes", v); },
         [](const auto& c) { return std::to_string(c.tabular_episodes); }},
        {"tabular", "reference_episodes",
         [](auto& c, const auto& v) { c.reference_episodes = parse_number<std::size_t>("reference_episodes", v); },
         [](const auto& c) { return std::to_string(c.reference_episodes); }},
        {"tabular", "reference_runs",
         [](auto& c, const auto& v) { c.reference_runs = parse_number<std::size_t>("reference_runs", v); },
         [](const auto& c) { return std::to_string(c.reference_runs); }},
    };
    return table;
}

momdp::DstMap dst_map(const ExperimentConfig& c) {
    return c.dst_map.empty() ? momdp::DstMap::classic() : momdp::DstMap::load(c.dst_map);
}

momdp::DstConfig dst_config(const ExperimentConfig& c) {
    momdp::DstConfig d;
    d.horizon = c.horizon;
    d.gamma = c.gamma;
    d.observation = c.env == EnvKind::DstImage ? momdp::ObservationKind::Image : momdp::ObservationKind::Raw;
    return d;
}

}  // namespace

std::string to_string(EnvKind env) {
    switch (env) {
        case EnvKind::MountainCar: return "mc";
        case EnvKind::DstRaw: return "dst-raw";
        case EnvKind::DstImage: return "dst-image";
    }
    return "?";
}

std::string to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::Dol: return "dol";
        case Algorithm::DolFr: return "dol-fr";
        case Algorithm::DolPr: return "dol-pr";
        case Algorithm::Exact: return "exact";
        case Algorithm::Tabular: return "tabular";
    }
    return "?";
}

EnvKind parse_env(const std::string& text) {
    if (text == "mc") return EnvKind::MountainCar;
    if (text == "dst-raw") return EnvKind::DstRaw;
    if (text == "dst-image") return EnvKind::DstImage;
    throw ConfigError("unknown environment '" + text + "' (expected mc, dst-raw or dst-image)");
}

Algorithm parse_algorithm(const std::string& text) {
    if (text == "dol") return Algorithm::Dol;
    if (text == "dol-fr") return Algorithm::DolFr;
    if (text == "dol-pr") return Algorithm::DolPr;
    if (text == "exact") return Algorithm::Exact;
    if (text == "tabular") return Algorithm::Tabular;
    throw ConfigError("unknown algorithm '" + text + "' (expected dol, dol-fr, dol-pr, exact or tabular)");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    if (text.empty()) throw ConfigError("empty seed list");
    std::vector<std::uint64_t> seeds;
    if (text.find(',') == std::string::npos) {
        const auto count = parse_number<std::uint64_t>("seeds", text);
        if (count == 0) throw ConfigError("seed count must be positive");
        for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
        return seeds;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) seeds.push_back(parse_number<std::uint64_t>("seeds", item));
    return seeds;
}

ExperimentConfig ExperimentConfig::resolve() const {
    ExperimentConfig c = *this;
    if (c.episodes == 0) c.episodes = c.env == EnvKind::MountainCar ? 4000 : 6000;
    if (c.anneal == 0) c.anneal = c.episodes / 2;
    if (c.tau < 0.0) c.tau = c.algorithm == Algorithm::Exact ? 0.0 : 0.005;
    if (c.tabular_episodes == 0) c.tabular_episodes = c.episodes;
    if (c.name.empty()) c.name = to_string(c.env) + "-" + to_string(c.algorithm);
    return c;
}

std::string ExperimentConfig::id() const { return resolve().name; }

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
    if (grid_points < 2) throw ConfigError("grid_points must be at least 2");
    if (horizon < 1) throw ConfigError("horizon must be at least 1");
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
    if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must lie in [0, 1]");
    if (epsilon_start < 0.0 || epsilon_start > 1.0 || epsilon_end < 0.0 || epsilon_end > 1.0)
        throw ConfigError("epsilon values must lie in [0, 1]");
    if (parallel_episodes == 0 || minibatch == 0 || replay_capacity == 0 || target_sync == 0)
        throw ConfigError("dqn sizes must be positive");
    if (replay_capacity < minibatch) throw ConfigError("replay_capacity must be at least minibatch");
    if (reward_scale <= 0.0) throw ConfigError("reward_scale must be positive");
    if (hidden.empty()) throw ConfigError("at least one hidden layer is required");
    if (jobs == 0) throw ConfigError("jobs must be positive");
    if (reference_runs == 0) throw ConfigError("reference_runs must be positive");
    if (algorithm == Algorithm::Exact && env == EnvKind::MountainCar)
        throw ConfigError("the exact planner needs an explicit model; mc has none (use tabular)");
    const auto r = resolve();
    if (r.tau < 0.0) throw ConfigError("tau must be non-negative");
    if (r.anneal > r.episodes) throw ConfigError("anneal must not exceed episodes");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            const auto& table = fields();
            const auto it = std::find_if(table.begin(), table.end(),
                                         [&](const Field& f) { return f.section == section && f.key == key; });
            if (it == table.end()) throw ConfigError("config: unknown key [" + section + "] " + key);
            it->set(base, value.data());
        }
    }
    base.validate();
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    return parse_config(in, std::move(base));
}

void write_config(std::ostream& out, const ExperimentConfig& config) {
    std::string section;
    for (const auto& f : fields()) {
        if (f.section != section) {
            out << (section.empty() ? "" : "\n") << '[' << f.section << "]\n";
            section = f.section;
        }
        out << f.key << " = " << f.get(config) << '\n';
    }
}

std::unique_ptr<momdp::Environment> make_environment(const ExperimentConfig& config) {
    if (config.env == EnvKind::MountainCar) {
        momdp::MountainCarConfig m;
        m.horizon = config.horizon;
        m.gamma = config.gamma;
        m.random_start = config.mc_random_start;
        m.bins = config.mc_bins;
        return std::make_unique<momdp::MountainCar>(m);
    }
    return std::make_unique<momdp::DeepSeaTreasure>(dst_map(config), dst_config(config));
}

nn::ArchitectureTemplate make_architecture(const ExperimentConfig& config) {
    const auto env = make_environment(config);
    const auto shape = env->observation_shape();
    if (shape.kind == momdp::ObservationKind::Image)
        return nn::ArchitectureTemplate::conv(shape, config.conv_channels, config.hidden);
    return nn::ArchitectureTemplate::mlp(shape.size(), config.hidden);
}

solver::DeepQConfig make_deep_q_config(const ExperimentConfig& config) {
    const auto c = config.resolve();
    solver::DeepQConfig d;
    d.total_episodes = c.episodes;
    d.epsilon = {c.epsilon_start, c.epsilon_end, c.anneal};
    d.parallel_episodes = c.parallel_episodes;
    d.minibatch = c.minibatch;
    d.replay_capacity = c.replay_capacity;
    d.target_sync_episodes = c.target_sync;
    d.learning_rate = c.learning_rate;
    d.clip_norm = c.clip_norm;
    d.updates_per_step = c.updates_per_step;
    d.reward_scale = c.reward_scale;
    d.zero_head = c.zero_head;
    return d;
}

solver::TabularConfig make_tabular_config(const ExperimentConfig& config) {
    const auto c = config.resolve();
    solver::TabularConfig t;
    t.total_episodes = c.tabular_episodes;
    t.epsilon = {c.epsilon_start, c.epsilon_end, std::min(c.anneal, c.tabular_episodes)};
    t.alpha = c.alpha;
    // Normalised treasure rewards are at most 1; every other reward is <= 0.
    if (c.optimistic && c.env != EnvKind::MountainCar) t.initial_value = {1.0, 0.0};
    return t;
}

dol::DolConfig make_dol_config(const ExperimentConfig& config) {
    const auto c = config.resolve();
    dol::DolConfig d;
    d.tau = c.tau;
    d.max_iterations = c.max_iterations;
    switch (c.algorithm) {
        case Algorithm::DolFr: d.reuse = dol::ReuseMode::Full; break;
        case Algorithm::DolPr: d.reuse = dol::ReuseMode::Partial; break;
        default: d.reuse = dol::ReuseMode::None; break;
    }
    return d;
}

std::unique_ptr<solver::ScalarisedSolver> make_solver(const ExperimentConfig& config) {
    config.validate();
    const auto env = make_environment(config);
    switch (config.algorithm) {
        case Algorithm::Exact:
            return std::make_unique<planner::ExactSolver>(
                momdp::explicit_model(dst_map(config), dst_config(config)).model);
        case Algorithm::Tabular:
            return std::make_unique<solver::TabularSolver>(*env, make_tabular_config(config));
        default:
            return std::make_unique<solver::DeepQSolver>(*env, make_architecture(config), make_deep_q_config(config));
    }
}

}  // namespace molsrl::harness
