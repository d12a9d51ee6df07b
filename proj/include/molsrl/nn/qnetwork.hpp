#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "molsrl/momdp/environment.hpp"
#include "molsrl/nn/layers.hpp"

namespace molsrl::nn {

/// Shape of a Q-network before its parameters exist.
struct ArchitectureTemplate {
    enum class Kind { Mlp, Conv };

    Kind kind = Kind::Mlp;
    momdp::ObservationShape input;
    std::vector<std::size_t> hidden{100};
    /// Conv only: output channels of each 3x3 convolution.
    std::vector<std::size_t> conv_channels{16, 32};
    std::size_t kernel = 3;
    Activation activation = Activation::Relu;

    static ArchitectureTemplate mlp(std::size_t input_dim, std::vector<std::size_t> hidden = {100});
    static ArchitectureTemplate conv(momdp::ObservationShape image, std::vector<std::size_t> channels = {16, 32},
                                     std::vector<std::size_t> hidden = {100});

    bool operator==(const ArchitectureTemplate&) const = default;
};

/// Non-owning view of one parameter tensor and its gradient.
struct ParamBlock {
    std::span<double> value;
    std::span<double> grad;
};

/// Maps an observation to an |A| x n matrix of vector Q-values. Output
/// column layout (per sample) is row-major: index a * n + k.
class QNetwork {
public:
    QNetwork() = default;
    /// Builds the layer stack and He-initialises it from `seed`.
    QNetwork(ArchitectureTemplate arch, std::size_t actions, std::size_t objectives, std::uint64_t seed);

    std::size_t actions() const { return actions_; }
    std::size_t objectives() const { return objectives_; }
    std::size_t input_size() const;
    std::size_t output_size() const { return actions_ * objectives_; }
    std::size_t parameter_count() const;
    std::uint64_t seed() const { return seed_; }
    const ArchitectureTemplate& architecture() const { return arch_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::vector<Layer>& layers() { return layers_; }

    /// Columns are samples. Throws DimensionError on an input-size mismatch.
    Matrix forward(const Matrix& inputs) const;
    Matrix forward_train(const Matrix& inputs);
    /// Backpropagates d(loss)/d(output) and stores parameter gradients.
    void backward(const Matrix& grad_output);

    /// |A| x n Q-matrix for a single feature vector.
    Matrix q_matrix(std::span<const double> features) const;

    std::vector<ParamBlock> parameters();
    /// Copies of all parameters, concatenated in layer order.
    std::vector<double> flat_parameters() const;
    void set_flat_parameters(std::span<const double> values);

    /// Redraws the final layer from the initialisation distribution and zeroes
    /// its bias; earlier layers are untouched.
    void reinit_last_layer(Rng& rng);
    /// Sets the final layer's weights and biases to zero.
    void zero_last_layer();

    bool same_architecture(const QNetwork& other) const;
    /// Copies parameters from `source`; throws DimensionError on mismatch.
    void copy_from(const QNetwork& source);
    bool all_finite() const;

private:
    ArchitectureTemplate arch_;
    std::size_t actions_ = 0;
    std::size_t objectives_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<Layer> layers_;
};

}  // namespace molsrl::nn
