#include "molsrl/nn/qnetwork.hpp"

#include <algorithm>

namespace molsrl::nn {

ArchitectureTemplate ArchitectureTemplate::mlp(std::size_t input_dim, std::vector<std::size_t> hidden) {
    ArchitectureTemplate t;
    t.kind = Kind::Mlp;
    t.input = momdp::ObservationShape::raw(input_dim);
    t.hidden = std::move(hidden);
    return t;
}

ArchitectureTemplate ArchitectureTemplate::conv(momdp::ObservationShape image, std::vector<std::size_t> channels,
                                                std::vector<std::size_t> hidden) {
    ArchitectureTemplate t;
    t.kind = Kind::Conv;
    t.input = image;
    t.conv_channels = std::move(channels);
    t.hidden = std::move(hidden);
    return t;
}

QNetwork::QNetwork(ArchitectureTemplate arch, std::size_t actions, std::size_t objectives, std::uint64_t seed)
    : arch_(std::move(arch)), actions_(actions), objectives_(objectives), seed_(seed) {
    if (actions_ == 0 || objectives_ == 0) throw DimensionError("QNetwork: empty output");
    std::size_t width = arch_.input.size();
    if (width == 0) throw DimensionError("QNetwork: empty input");
    if (arch_.kind == ArchitectureTemplate::Kind::Conv) {
        std::size_t channels = arch_.input.channels;
        std::size_t rows = arch_.input.rows;
        std::size_t cols = arch_.input.cols;
        for (std::size_t out : arch_.conv_channels) {
            Conv2d c(channels, out, rows, cols, arch_.kernel, arch_.activation);
            rows = c.out_rows();
            cols = c.out_cols();
            channels = out;
            width = c.output_size();
            layers_.emplace_back(std::move(c));
        }
    }
    for (std::size_t h : arch_.hidden) {
        layers_.emplace_back(Dense(width, h, arch_.activation));
        width = h;
    }
    layers_.emplace_back(Dense(width, output_size(), Activation::Identity));

    Rng rng = derive_rng(seed_, 0);
    for (auto& layer : layers_) initialise(layer, rng);
}

std::size_t QNetwork::input_size() const { return layers_.empty() ? 0 : nn::input_size(layers_.front()); }

std::size_t QNetwork::parameter_count() const {
    std::size_t total = 0;
    for (const auto& layer : layers_)
        std::visit([&](const auto& l) { total += static_cast<std::size_t>(l.weight.size() + l.bias.size()); }, layer);
    return total;
}

Matrix QNetwork::forward(const Matrix& inputs) const {
    Matrix x = inputs;
    for (const auto& layer : layers_) x = nn::forward(layer, x);
    return x;
}

Matrix QNetwork::forward_train(const Matrix& inputs) {
    Matrix x = inputs;
    for (auto& layer : layers_) x = nn::forward_train(layer, x);
    return x;
}

void QNetwork::backward(const Matrix& grad_output) {
    Matrix g = grad_output;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) g = nn::backward(*it, g);
}

Matrix QNetwork::q_matrix(std::span<const double> features) const {
    if (features.size() != input_size()) throw DimensionError("QNetwork::q_matrix: feature size mismatch");
    Matrix x = Eigen::Map<const Matrix>(features.data(), static_cast<Eigen::Index>(features.size()), 1);
    const Matrix out = forward(x);
    Matrix q(static_cast<Eigen::Index>(actions_), static_cast<Eigen::Index>(objectives_));
    for (std::size_t a = 0; a < actions_; ++a)
        for (std::size_t k = 0; k < objectives_; ++k)
            q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
                out(static_cast<Eigen::Index>(a * objectives_ + k), 0);
    return q;
}

std::vector<ParamBlock> QNetwork::parameters() {
    std::vector<ParamBlock> out;
    for (auto& layer : layers_) {
        std::visit(
            [&](auto& l) {
                out.push_back({{l.weight.data(), static_cast<std::size_t>(l.weight.size())},
                               {l.grad_weight.data(), static_cast<std::size_t>(l.grad_weight.size())}});
                out.push_back({{l.bias.data(), static_cast<std::size_t>(l.bias.size())},
                               {l.grad_bias.data(), static_cast<std::size_t>(l.grad_bias.size())}});
            },
            layer);
    }
    return out;
}

std::vector<double> QNetwork::flat_parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const auto& layer : layers_)
        std::visit(
            [&](const auto& l) {
                out.insert(out.end(), l.weight.data(), l.weight.data() + l.weight.size());
                out.insert(out.end(), l.bias.data(), l.bias.data() + l.bias.size());
            },
            layer);
    return out;
}

void QNetwork::set_flat_parameters(std::span<const double> values) {
    if (values.size() != parameter_count()) throw DimensionError("QNetwork: parameter count mismatch");
    std::size_t offset = 0;
    for (auto& layer : layers_)
        std::visit(
            [&](auto& l) {
                std::copy_n(values.data() + offset, l.weight.size(), l.weight.data());
                offset += static_cast<std::size_t>(l.weight.size());
                std::copy_n(values.data() + offset, l.bias.size(), l.bias.data());
                offset += static_cast<std::size_t>(l.bias.size());
            },
            layer);
}

void QNetwork::reinit_last_layer(Rng& rng) {
    if (layers_.empty()) throw ContractViolation("QNetwork: no layers");
    initialise(layers_.back(), rng);
}

void QNetwork::zero_last_layer() {
    if (layers_.empty()) throw ContractViolation("QNetwork: no layers");
    std::visit(
        [](auto& l) {
            l.weight.setZero();
            l.bias.setZero();
        },
        layers_.back());
}

bool QNetwork::same_architecture(const QNetwork& other) const {
    return arch_ == other.arch_ && actions_ == other.actions_ && objectives_ == other.objectives_;
}

void QNetwork::copy_from(const QNetwork& source) {
    if (!same_architecture(source)) throw DimensionError("QNetwork::copy_from: architecture mismatch");
    set_flat_parameters(source.flat_parameters());
}

bool QNetwork::all_finite() const {
    for (const auto& layer : layers_) {
        bool ok = true;
        std::visit([&](const auto& l) { ok = l.weight.allFinite() && l.bias.allFinite(); }, layer);
        if (!ok) return false;
    }
    return true;
}

}  // namespace molsrl::nn
