#include "molsrl/nn/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace molsrl::nn {

namespace {

Matrix column(std::span<const double> features) {
    return Eigen::Map<const Matrix>(features.data(), static_cast<Eigen::Index>(features.size()), 1);
}

double probe_loss(const Matrix& out, const ccs::WeightVector& w, std::size_t actions, double target) {
    const std::size_t n = w.size();
    double loss = 0.0;
    for (std::size_t a = 0; a < actions; ++a)
        for (std::size_t k = 0; k < n; ++k) {
            const double e = out(static_cast<Eigen::Index>(a * n + k), 0) - target;
            loss += w[k] * e * e;
        }
    return loss / static_cast<double>(actions * n);
}

}  // namespace

double scalarised_probe_loss(const QNetwork& net, std::span<const double> features, const ccs::WeightVector& w,
                             double target) {
    if (w.size() != net.objectives()) throw DimensionError("gradient check: weight/objective mismatch");
    return probe_loss(net.forward(column(features)), w, net.actions(), target);
}

double gradient_check(QNetwork net, std::span<const double> features, const ccs::WeightVector& w,
                      const GradientCheckOptions& options) {
    if (w.size() != net.objectives()) throw DimensionError("gradient check: weight/objective mismatch");
    const std::size_t n = w.size();
    const Matrix x = column(features);
    const Matrix out = net.forward_train(x);
    Matrix grad(out.rows(), 1);
    const double scale = 2.0 / static_cast<double>(net.actions() * n);
    for (std::size_t a = 0; a < net.actions(); ++a)
        for (std::size_t k = 0; k < n; ++k) {
            const auto row = static_cast<Eigen::Index>(a * n + k);
            grad(row, 0) = scale * w[k] * (out(row, 0) - options.target);
        }
    net.backward(grad);

    Rng rng = derive_rng(options.sample_seed, 17);
    double worst = 0.0;
    for (auto& block : net.parameters()) {
        std::vector<std::size_t> idx(block.value.size());
        std::iota(idx.begin(), idx.end(), 0);
        if (options.max_per_block > 0 && idx.size() > options.max_per_block) {
            for (std::size_t i = 0; i < options.max_per_block; ++i)
                std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
            idx.resize(options.max_per_block);
        }
        for (std::size_t i : idx) {
            const double analytic = block.grad[i];
            const double saved = block.value[i];
            block.value[i] = saved + options.step;
            const double up = probe_loss(net.forward(x), w, net.actions(), options.target);
            block.value[i] = saved - options.step;
            const double down = probe_loss(net.forward(x), w, net.actions(), options.target);
            block.value[i] = saved;
            const double numeric = (up - down) / (2.0 * options.step);
            const double denom = std::max({std::abs(analytic), std::abs(numeric), options.magnitude_floor});
            worst = std::max(worst, std::abs(analytic - numeric) / denom);
        }
    }
    return worst;
}

}  // namespace molsrl::nn
