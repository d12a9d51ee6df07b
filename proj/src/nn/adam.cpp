#include "molsrl/nn/adam.hpp"

#include <cmath>

namespace molsrl::nn {

void adam_update(QNetwork& net, AdamState& state) {
    auto blocks = net.parameters();
    if (state.first_moment.empty()) {
        for (const auto& b : blocks) {
            state.first_moment.emplace_back(b.value.size(), 0.0);
            state.second_moment.emplace_back(b.value.size(), 0.0);
        }
    }
    if (state.first_moment.size() != blocks.size()) throw DimensionError("adam_update: optimiser/network mismatch");

    double scale = 1.0;
    if (state.clip_norm > 0.0) {
        double sq = 0.0;
        for (const auto& b : blocks)
            for (double g : b.grad) sq += g * g;
        const double norm = std::sqrt(sq);
        if (norm > state.clip_norm) scale = state.clip_norm / norm;
    }

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto& m = state.first_moment[i];
        auto& v = state.second_moment[i];
        if (m.size() != blocks[i].value.size()) throw DimensionError("adam_update: block size mismatch");
        for (std::size_t j = 0; j < m.size(); ++j) {
            const double g = blocks[i].grad[j] * scale;
            m[j] = state.beta1 * m[j] + (1.0 - state.beta1) * g;
            v[j] = state.beta2 * v[j] + (1.0 - state.beta2) * g * g;
            blocks[i].value[j] -= state.learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + state.epsilon);
        }
    }
}

}  // namespace molsrl::nn
