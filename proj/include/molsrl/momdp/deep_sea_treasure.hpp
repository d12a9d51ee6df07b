#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "molsrl/momdp/environment.hpp"
#include "molsrl/momdp/model.hpp"

namespace molsrl::momdp {

enum class Cell : char { Water = '.', Seabed = '#', Treasure = 'T' };

/// Static Deep Sea Treasure layout: a grid plus one treasure value per column.
class DstMap {
public:
    /// Parses the grid text ('S', '.', 'T', '#', '#'-prefixed comment lines
    /// allowed) and the sidecar "column value" table. Throws ConfigError on
    /// ragged rows, unknown characters, a missing start, treasures without a
    /// value (or values without a treasure) and treasures unreachable from
    /// the start.
    static DstMap parse(const std::string& grid_text, const std::string& values_text);
    /// Loads `<stem>.map` and `<stem>.values`.
    static DstMap load(const std::filesystem::path& map_file);
    /// The bundled 10x11 map.
    static DstMap classic();

    int width() const { return width_; }
    int height() const { return height_; }
    int start_x() const { return start_x_; }
    int start_y() const { return start_y_; }
    Cell cell(int x, int y) const { return cells_[static_cast<std::size_t>(y * width_ + x)]; }
    bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool passable(int x, int y) const { return in_bounds(x, y) && cell(x, y) != Cell::Seabed; }

    /// Raw treasure value at (x, y); 0 when the cell holds no treasure.
    double treasure_value(int x, int y) const;
    double max_treasure_value() const { return max_value_; }
    std::size_t treasure_count() const;
    /// Treasure cells in column order.
    std::vector<std::pair<int, int>> treasure_cells() const;

private:
    int width_ = 0;
    int height_ = 0;
    int start_x_ = 0;
    int start_y_ = 0;
    std::vector<Cell> cells_;
    std::map<int, double> values_;  // column -> raw value
    double max_value_ = 0.0;
};

struct DstConfig {
    int horizon = 200;
    double gamma = 0.97;
    ObservationKind observation = ObservationKind::Raw;
    /// Time reward per step; defaults to -1/horizon when left at 0.
    double time_reward = 0.0;

    double step_time_reward() const { return time_reward != 0.0 ? time_reward : -1.0 / horizon; }
};

/// Action order: Up, Down, Left, Right.
enum DstAction : ActionId { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

class DeepSeaTreasure final : public Environment {
public:
    DeepSeaTreasure(DstMap map, DstConfig config);

    std::unique_ptr<Environment> clone() const override;
    std::string name() const override;
    std::size_t objective_count() const override { return 2; }
    std::size_t action_count() const override { return 4; }
    ObservationShape observation_shape() const override;
    double discount() const override { return config_.gamma; }
    int horizon() const override { return config_.horizon; }
    bool deterministic() const override { return true; }

    Observation reset(Rng& rng) override;
    StepResult step(ActionId action) override;
    bool done() const override { return done_; }
    int steps() const override { return steps_; }

    std::size_t state_key() const override;
    std::size_t state_key_count() const override;

    int x() const { return x_; }
    int y() const { return y_; }
    /// Places the agent at (x, y) with a fresh step counter; for tests and
    /// model construction.
    void set_position(int x, int y);

    Observation observe() const;
    /// 3 x rows x cols: agent one-hot, treasure cells, seabed mask.
    Observation render_image() const;

    const DstMap& map() const { return map_; }
    const DstConfig& config() const { return config_; }

    /// Deterministic successor cell for a move; blocked moves stay put.
    static std::pair<int, int> move(const DstMap& map, int x, int y, ActionId action);

private:
    DstMap map_;
    DstConfig config_;
    int x_ = 0;
    int y_ = 0;
    int steps_ = 0;
    bool done_ = false;
};

/// Enumerates every passable cell reachable from the start as a state.
/// Transitions and rewards match DeepSeaTreasure::step exactly; treasure
/// cells are absorbing terminals.
struct DstExplicitModel {
    MOMDPModel model;
    std::vector<std::pair<int, int>> cells;  // state -> (x, y)
};
DstExplicitModel explicit_model(const DstMap& map, const DstConfig& config);

}  // namespace molsrl::momdp
