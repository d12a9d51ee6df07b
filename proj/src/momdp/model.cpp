#include "molsrl/momdp/model.hpp"

#include <cmath>
#include <string>

namespace molsrl::momdp {

void Environment::network_input(const Observation& obs, std::span<double> out) const {
    if (out.size() != obs.data.size()) throw DimensionError("network_input: size mismatch");
    std::copy(obs.data.begin(), obs.data.end(), out.begin());
}

RewardVector MOMDPModel::reward_vector(std::size_t s, ActionId a) const {
    const auto base = reward.begin() + static_cast<std::ptrdiff_t>((s * action_count + a) * objective_count);
    return RewardVector(base, base + static_cast<std::ptrdiff_t>(objective_count));
}

void MOMDPModel::validate() const {
    const std::size_t sa = state_count * action_count;
    if (state_count == 0 || action_count == 0 || objective_count < 2)
        throw ConfigError("MOMDPModel: empty state/action set or fewer than 2 objectives");
    if (next.size() != sa || reward.size() != sa * objective_count || terminal.size() != state_count)
        throw ConfigError("MOMDPModel: table sizes do not match state/action counts");
    if (start >= state_count) throw ConfigError("MOMDPModel: start state out of range");
    if (gamma < 0.0 || gamma > 1.0) throw ConfigError("MOMDPModel: discount outside [0,1]");
    for (std::size_t s = 0; s < state_count; ++s) {
        for (std::size_t a = 0; a < action_count; ++a) {
            if (successor(s, a) >= state_count)
                throw ConfigError("MOMDPModel: successor out of range at state " + std::to_string(s));
            for (std::size_t k = 0; k < objective_count; ++k) {
                const double r = reward_at(s, a, k);
                if (!std::isfinite(r)) throw ConfigError("MOMDPModel: non-finite reward");
                if (terminal[s] && (r != 0.0 || successor(s, a) != s))
                    throw ConfigError("MOMDPModel: terminal state " + std::to_string(s) + " is not absorbing");
            }
        }
    }
}

}  // namespace molsrl::momdp
