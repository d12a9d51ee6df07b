#pragma once

#include <cstddef>
#include <variant>

#include <Eigen/Dense>

#include "molsrl/common.hpp"

namespace molsrl::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { Relu, Identity };

/// Fully connected layer; activations are column-per-sample.
struct Dense {
    Matrix weight;  // out x in
    Vector bias;    // out
    Activation activation = Activation::Relu;

    Matrix grad_weight;
    Vector grad_bias;
    Matrix cached_input;
    Matrix cached_pre;

    Dense() = default;
    Dense(std::size_t in, std::size_t out, Activation act);

    std::size_t input_size() const { return static_cast<std::size_t>(weight.cols()); }
    std::size_t output_size() const { return static_cast<std::size_t>(weight.rows()); }
};

/// Stride-1, unpadded square convolution over channel-major images.
struct Conv2d {
    std::size_t in_channels = 0;
    std::size_t out_channels = 0;
    std::size_t in_rows = 0;
    std::size_t in_cols = 0;
    std::size_t kernel = 3;
    Matrix weight;  // out_channels x (in_channels * kernel * kernel)
    Vector bias;
    Activation activation = Activation::Relu;

    Matrix grad_weight;
    Vector grad_bias;
    Matrix cached_columns;
    Matrix cached_pre;

    Conv2d() = default;
    Conv2d(std::size_t cin, std::size_t cout, std::size_t rows, std::size_t cols, std::size_t k, Activation act);

    std::size_t out_rows() const { return in_rows - kernel + 1; }
    std::size_t out_cols() const { return in_cols - kernel + 1; }
    std::size_t input_size() const { return in_channels * in_rows * in_cols; }
    std::size_t output_size() const { return out_channels * out_rows() * out_cols(); }
};

using Layer = std::variant<Dense, Conv2d>;

/// Inference pass; leaves caches untouched.
Matrix forward(const Layer& layer, const Matrix& input);
/// Training pass; caches what backward needs.
Matrix forward_train(Layer& layer, const Matrix& input);
/// Stores parameter gradients in the layer and returns d(loss)/d(input).
Matrix backward(Layer& layer, const Matrix& grad_output);

/// He-uniform weights (bound sqrt(6 / fan_in)), zero biases.
void initialise(Layer& layer, Rng& rng);

std::size_t input_size(const Layer& layer);
std::size_t output_size(const Layer& layer);

}  // namespace molsrl::nn
