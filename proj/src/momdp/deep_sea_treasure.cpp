#include "molsrl/momdp/deep_sea_treasure.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace molsrl::momdp {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool skip_line(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || (line[first] == '#' && line.size() > first + 1 && line[first + 1] == ' ');
}

}  // namespace

DstMap DstMap::parse(const std::string& grid_text, const std::string& values_text) {
    DstMap map;
    std::istringstream grid(grid_text);
    std::string line;
    bool have_start = false;
    while (std::getline(grid, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // Comment lines start with "# "; a row of seabed never contains a space.
        if (line.empty() || skip_line(line)) continue;
        if (map.width_ == 0) map.width_ = static_cast<int>(line.size());
        if (static_cast<int>(line.size()) != map.width_)
            throw ConfigError("DST map: ragged row " + std::to_string(map.height_));
        for (int x = 0; x < map.width_; ++x) {
            const char c = line[static_cast<std::size_t>(x)];
            switch (c) {
                case 'S':
                    if (have_start) throw ConfigError("DST map: more than one start cell");
                    have_start = true;
                    map.start_x_ = x;
                    map.start_y_ = map.height_;
                    map.cells_.push_back(Cell::Water);
                    break;
                case '.': map.cells_.push_back(Cell::Water); break;
                case '#': map.cells_.push_back(Cell::Seabed); break;
                case 'T': map.cells_.push_back(Cell::Treasure); break;
                default: throw ConfigError(std::string("DST map: unknown cell character '") + c + "'");
            }
        }
        ++map.height_;
    }
    if (map.width_ == 0 || map.height_ == 0) throw ConfigError("DST map: empty grid");
    if (!have_start) throw ConfigError("DST map: no start cell 'S'");

    std::istringstream values(values_text);
    while (std::getline(values, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        int column = -1;
        double value = 0.0;
        if (!(row >> column >> value)) throw ConfigError("DST values: malformed line '" + line + "'");
        if (column < 0 || column >= map.width_) throw ConfigError("DST values: column out of range");
        if (!(value > 0.0)) throw ConfigError("DST values: treasure values must be positive");
        if (!map.values_.emplace(column, value).second) throw ConfigError("DST values: duplicate column");
    }

    for (int x = 0; x < map.width_; ++x) {
        int treasures = 0;
        for (int y = 0; y < map.height_; ++y) treasures += map.cell(x, y) == Cell::Treasure;
        if (treasures > 1) throw ConfigError("DST map: more than one treasure in column " + std::to_string(x));
        if ((treasures == 1) != (map.values_.count(x) == 1))
            throw ConfigError("DST map: treasure/value mismatch in column " + std::to_string(x));
    }
    if (map.values_.empty()) throw ConfigError("DST map: no treasures");
    for (const auto& [column, value] : map.values_) map.max_value_ = std::max(map.max_value_, value);

    // Every treasure must be reachable without passing through another cell
    // type than water (treasures end the episode).
    std::vector<bool> seen(map.cells_.size(), false);
    std::queue<std::pair<int, int>> frontier;
    frontier.emplace(map.start_x_, map.start_y_);
    seen[static_cast<std::size_t>(map.start_y_ * map.width_ + map.start_x_)] = true;
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop();
        if (map.cell(x, y) == Cell::Treasure) continue;
        for (ActionId a = 0; a < 4; ++a) {
            const auto [nx, ny] = DeepSeaTreasure::move(map, x, y, a);
            const auto idx = static_cast<std::size_t>(ny * map.width_ + nx);
            if (!seen[idx]) {
                seen[idx] = true;
                frontier.emplace(nx, ny);
            }
        }
    }
    for (const auto& [x, y] : map.treasure_cells()) {
        if (!seen[static_cast<std::size_t>(y * map.width_ + x)])
            throw ConfigError("DST map: treasure at column " + std::to_string(x) + " unreachable from start");
    }
    return map;
}

DstMap DstMap::load(const std::filesystem::path& map_file) {
    auto values_file = map_file;
    values_file.replace_extension(".values");
    return parse(read_file(map_file), read_file(values_file));
}

DstMap DstMap::classic() {
    return load(std::filesystem::path(MOLSRL_DATA_DIR) / "deep_sea_treasure.map");
}

double DstMap::treasure_value(int x, int y) const {
    if (!in_bounds(x, y) || cell(x, y) != Cell::Treasure) return 0.0;
    return values_.at(x);
}

std::size_t DstMap::treasure_count() const { return values_.size(); }

std::vector<std::pair<int, int>> DstMap::treasure_cells() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < width_; ++x)
        for (int y = 0; y < height_; ++y)
            if (cell(x, y) == Cell::Treasure) out.emplace_back(x, y);
    return out;
}

DeepSeaTreasure::DeepSeaTreasure(DstMap map, DstConfig config) : map_(std::move(map)), config_(config) {
    if (config_.horizon < 1) throw ConfigError("DST: horizon must be >= 1");
    if (config_.gamma < 0.0 || config_.gamma > 1.0) throw ConfigError("DST: gamma outside [0,1]");
    x_ = map_.start_x();
    y_ = map_.start_y();
}

std::unique_ptr<Environment> DeepSeaTreasure::clone() const { return std::make_unique<DeepSeaTreasure>(*this); }

std::string DeepSeaTreasure::name() const {
    return config_.observation == ObservationKind::Image ? "dst-image" : "dst-raw";
}

ObservationShape DeepSeaTreasure::observation_shape() const {
    if (config_.observation == ObservationKind::Image)
        return ObservationShape::image(3, static_cast<std::size_t>(map_.height()), static_cast<std::size_t>(map_.width()));
    return ObservationShape::raw(2);
}

Observation DeepSeaTreasure::reset(Rng&) {
    x_ = map_.start_x();
    y_ = map_.start_y();
    steps_ = 0;
    done_ = false;
    return observe();
}

std::pair<int, int> DeepSeaTreasure::move(const DstMap& map, int x, int y, ActionId action) {
    int nx = x;
    int ny = y;
    switch (action) {
        case kUp: --ny; break;
        case kDown: ++ny; break;
        case kLeft: --nx; break;
        case kRight: ++nx; break;
        default: throw ContractViolation("DST: action out of range");
    }
    if (!map.passable(nx, ny)) return {x, y};
    return {nx, ny};
}

StepResult DeepSeaTreasure::step(ActionId action) {
    if (done_) throw ContractViolation("DST: step called on a finished episode");
    if (action >= action_count()) throw ContractViolation("DST: action out of range");
    std::tie(x_, y_) = move(map_, x_, y_, action);
    ++steps_;
    StepResult result;
    const double treasure = map_.treasure_value(x_, y_);
    result.reward = {treasure / map_.max_treasure_value(), config_.step_time_reward()};
    result.terminal = map_.cell(x_, y_) == Cell::Treasure;
    done_ = result.terminal || steps_ >= config_.horizon;
    result.done = done_;
    result.observation = observe();
    return result;
}

std::size_t DeepSeaTreasure::state_key() const { return static_cast<std::size_t>(y_ * map_.width() + x_); }

std::size_t DeepSeaTreasure::state_key_count() const {
    return static_cast<std::size_t>(map_.width() * map_.height());
}

void DeepSeaTreasure::set_position(int x, int y) {
    if (!map_.passable(x, y)) throw ContractViolation("DST: position is not a passable cell");
    x_ = x;
    y_ = y;
    steps_ = 0;
    done_ = map_.cell(x, y) == Cell::Treasure;
}

Observation DeepSeaTreasure::observe() const {
    if (config_.observation == ObservationKind::Image) return render_image();
    const double sx = map_.width() > 1 ? 1.0 / (map_.width() - 1) : 0.0;
    const double sy = map_.height() > 1 ? 1.0 / (map_.height() - 1) : 0.0;
    return Observation{ObservationShape::raw(2), {x_ * sx, y_ * sy}};
}

Observation DeepSeaTreasure::render_image() const {
    const auto rows = static_cast<std::size_t>(map_.height());
    const auto cols = static_cast<std::size_t>(map_.width());
    Observation obs{ObservationShape::image(3, rows, cols), std::vector<double>(3 * rows * cols, 0.0)};
    auto at = [&](std::size_t c, int r, int col) -> double& {
        return obs.data[(c * rows + static_cast<std::size_t>(r)) * cols + static_cast<std::size_t>(col)];
    };
    at(0, y_, x_) = 1.0;
    for (int r = 0; r < map_.height(); ++r) {
        for (int col = 0; col < map_.width(); ++col) {
            if (map_.cell(col, r) == Cell::Treasure) at(1, r, col) = 1.0;
            if (map_.cell(col, r) == Cell::Seabed) at(2, r, col) = 1.0;
        }
    }
    return obs;
}

DstExplicitModel explicit_model(const DstMap& map, const DstConfig& config) {
    DstExplicitModel out;
    std::vector<int> index(static_cast<std::size_t>(map.width() * map.height()), -1);
    auto key = [&](int x, int y) { return static_cast<std::size_t>(y * map.width() + x); };

    // Breadth-first enumeration keeps state ids stable and start = 0.
    std::queue<std::pair<int, int>> frontier;
    frontier.emplace(map.start_x(), map.start_y());
    index[key(map.start_x(), map.start_y())] = 0;
    out.cells.emplace_back(map.start_x(), map.start_y());
    while (!frontier.empty()) {
        const auto [x, y] = frontier.front();
        frontier.pop();
        if (map.cell(x, y) == Cell::Treasure) continue;
        for (ActionId a = 0; a < 4; ++a) {
            const auto [nx, ny] = DeepSeaTreasure::move(map, x, y, a);
            if (index[key(nx, ny)] < 0) {
                index[key(nx, ny)] = static_cast<int>(out.cells.size());
                out.cells.emplace_back(nx, ny);
                frontier.emplace(nx, ny);
            }
        }
    }

    MOMDPModel& m = out.model;
    m.state_count = out.cells.size();
    m.action_count = 4;
    m.objective_count = 2;
    m.gamma = config.gamma;
    m.start = 0;
    m.horizon = config.horizon;
    m.next.resize(m.state_count * m.action_count);
    m.reward.assign(m.state_count * m.action_count * m.objective_count, 0.0);
    m.terminal.assign(m.state_count, false);
    for (std::size_t s = 0; s < m.state_count; ++s) {
        const auto [x, y] = out.cells[s];
        const bool terminal = map.cell(x, y) == Cell::Treasure;
        m.terminal[s] = terminal;
        for (ActionId a = 0; a < 4; ++a) {
            const std::size_t sa = s * m.action_count + a;
            if (terminal) {
                m.next[sa] = s;
                continue;
            }
            const auto [nx, ny] = DeepSeaTreasure::move(map, x, y, a);
            m.next[sa] = static_cast<std::size_t>(index[key(nx, ny)]);
            m.reward[sa * 2] = map.treasure_value(nx, ny) / map.max_treasure_value();
            m.reward[sa * 2 + 1] = config.step_time_reward();
        }
    }
    m.validate();
    return out;
}

}  // namespace molsrl::momdp
