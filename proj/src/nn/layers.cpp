#include "molsrl/nn/layers.hpp"

#include <cmath>

namespace molsrl::nn {

namespace {

Matrix activate(const Matrix& pre, Activation act) {
    if (act == Activation::Identity) return pre;
    return pre.cwiseMax(0.0);
}

Matrix activation_grad(const Matrix& grad_out, const Matrix& pre, Activation act) {
    if (act == Activation::Identity) return grad_out;
    return (pre.array() > 0.0).select(grad_out, 0.0);
}

// Unrolls 3x3 (kernel x kernel) patches: rows are (channel, ki, kj), columns
// are (sample, output pixel).
Matrix im2col(const Conv2d& c, const Matrix& input) {
    const std::size_t batch = static_cast<std::size_t>(input.cols());
    const std::size_t orows = c.out_rows();
    const std::size_t ocols = c.out_cols();
    const std::size_t pixels = orows * ocols;
    Matrix cols(static_cast<Eigen::Index>(c.in_channels * c.kernel * c.kernel),
                static_cast<Eigen::Index>(pixels * batch));
    for (std::size_t b = 0; b < batch; ++b) {
        const double* img = input.col(static_cast<Eigen::Index>(b)).data();
        for (std::size_t ch = 0; ch < c.in_channels; ++ch) {
            for (std::size_t ki = 0; ki < c.kernel; ++ki) {
                for (std::size_t kj = 0; kj < c.kernel; ++kj) {
                    const auto row = static_cast<Eigen::Index>((ch * c.kernel + ki) * c.kernel + kj);
                    for (std::size_t i = 0; i < orows; ++i) {
                        const double* src = img + (ch * c.in_rows + i + ki) * c.in_cols + kj;
                        for (std::size_t j = 0; j < ocols; ++j)
                            cols(row, static_cast<Eigen::Index>(b * pixels + i * ocols + j)) = src[j];
                    }
                }
            }
        }
    }
    return cols;
}

// (out_channels x pixels*batch) -> (out_channels*pixels x batch), channel-major per sample.
Matrix to_samples(const Matrix& z, std::size_t channels, std::size_t pixels, std::size_t batch) {
    Matrix out(static_cast<Eigen::Index>(channels * pixels), static_cast<Eigen::Index>(batch));
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t ch = 0; ch < channels; ++ch)
            out.col(static_cast<Eigen::Index>(b)).segment(static_cast<Eigen::Index>(ch * pixels),
                                                          static_cast<Eigen::Index>(pixels)) =
                z.row(static_cast<Eigen::Index>(ch)).segment(static_cast<Eigen::Index>(b * pixels),
                                                             static_cast<Eigen::Index>(pixels)).transpose();
    return out;
}

Matrix from_samples(const Matrix& s, std::size_t channels, std::size_t pixels, std::size_t batch) {
    Matrix z(static_cast<Eigen::Index>(channels), static_cast<Eigen::Index>(pixels * batch));
    for (std::size_t b = 0; b < batch; ++b)
        for (std::size_t ch = 0; ch < channels; ++ch)
            z.row(static_cast<Eigen::Index>(ch)).segment(static_cast<Eigen::Index>(b * pixels),
                                                         static_cast<Eigen::Index>(pixels)) =
                s.col(static_cast<Eigen::Index>(b)).segment(static_cast<Eigen::Index>(ch * pixels),
                                                            static_cast<Eigen::Index>(pixels)).transpose();
    return z;
}

Matrix conv_pre(const Conv2d& c, const Matrix& cols, std::size_t batch) {
    Matrix z = c.weight * cols;
    z.colwise() += c.bias;
    return to_samples(z, c.out_channels, c.out_rows() * c.out_cols(), batch);
}

void check_input(std::size_t expected, const Matrix& input) {
    if (static_cast<std::size_t>(input.rows()) != expected)
        throw DimensionError("layer input has " + std::to_string(input.rows()) + " rows, expected " +
                             std::to_string(expected));
}

}  // namespace

Dense::Dense(std::size_t in, std::size_t out, Activation act)
    : weight(Matrix::Zero(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in))),
      bias(Vector::Zero(static_cast<Eigen::Index>(out))),
      activation(act),
      grad_weight(Matrix::Zero(weight.rows(), weight.cols())),
      grad_bias(Vector::Zero(bias.size())) {}

Conv2d::Conv2d(std::size_t cin, std::size_t cout, std::size_t rows, std::size_t cols, std::size_t k, Activation act)
    : in_channels(cin), out_channels(cout), in_rows(rows), in_cols(cols), kernel(k),
      weight(Matrix::Zero(static_cast<Eigen::Index>(cout), static_cast<Eigen::Index>(cin * k * k))),
      bias(Vector::Zero(static_cast<Eigen::Index>(cout))),
      activation(act),
      grad_weight(Matrix::Zero(weight.rows(), weight.cols())),
      grad_bias(Vector::Zero(bias.size())) {
    if (k == 0 || rows < k || cols < k) throw DimensionError("Conv2d: kernel larger than input");
}

Matrix forward(const Layer& layer, const Matrix& input) {
    return std::visit(
        [&](const auto& l) -> Matrix {
            using T = std::decay_t<decltype(l)>;
            check_input(l.input_size(), input);
            if constexpr (std::is_same_v<T, Dense>) {
                Matrix z = l.weight * input;
                z.colwise() += l.bias;
                return activate(z, l.activation);
            } else {
                const auto batch = static_cast<std::size_t>(input.cols());
                return activate(conv_pre(l, im2col(l, input), batch), l.activation);
            }
        },
        layer);
}

Matrix forward_train(Layer& layer, const Matrix& input) {
    return std::visit(
        [&](auto& l) -> Matrix {
            using T = std::decay_t<decltype(l)>;
            check_input(l.input_size(), input);
            if constexpr (std::is_same_v<T, Dense>) {
                l.cached_input = input;
                l.cached_pre = l.weight * input;
                l.cached_pre.colwise() += l.bias;
            } else {
                const auto batch = static_cast<std::size_t>(input.cols());
                l.cached_columns = im2col(l, input);
                l.cached_pre = conv_pre(l, l.cached_columns, batch);
            }
            return activate(l.cached_pre, l.activation);
        },
        layer);
}

Matrix backward(Layer& layer, const Matrix& grad_output) {
    return std::visit(
        [&](auto& l) -> Matrix {
            using T = std::decay_t<decltype(l)>;
            const Matrix dz = activation_grad(grad_output, l.cached_pre, l.activation);
            if constexpr (std::is_same_v<T, Dense>) {
                l.grad_weight.noalias() = dz * l.cached_input.transpose();
                l.grad_bias = dz.rowwise().sum();
                return l.weight.transpose() * dz;
            } else {
                const auto batch = static_cast<std::size_t>(dz.cols());
                const std::size_t orows = l.out_rows();
                const std::size_t ocols = l.out_cols();
                const std::size_t pixels = orows * ocols;
                const Matrix dz_flat = from_samples(dz, l.out_channels, pixels, batch);
                l.grad_weight.noalias() = dz_flat * l.cached_columns.transpose();
                l.grad_bias = dz_flat.rowwise().sum();
                const Matrix dcols = l.weight.transpose() * dz_flat;
                Matrix dx = Matrix::Zero(static_cast<Eigen::Index>(l.input_size()), static_cast<Eigen::Index>(batch));
                for (std::size_t b = 0; b < batch; ++b) {
                    double* img = dx.col(static_cast<Eigen::Index>(b)).data();
                    for (std::size_t ch = 0; ch < l.in_channels; ++ch)
                        for (std::size_t ki = 0; ki < l.kernel; ++ki)
                            for (std::size_t kj = 0; kj < l.kernel; ++kj) {
                                const auto row = static_cast<Eigen::Index>((ch * l.kernel + ki) * l.kernel + kj);
                                for (std::size_t i = 0; i < orows; ++i) {
                                    double* dst = img + (ch * l.in_rows + i + ki) * l.in_cols + kj;
                                    for (std::size_t j = 0; j < ocols; ++j)
                                        dst[j] += dcols(row, static_cast<Eigen::Index>(b * pixels + i * ocols + j));
                                }
                            }
                }
                return dx;
            }
        },
        layer);
}

void initialise(Layer& layer, Rng& rng) {
    std::visit(
        [&](auto& l) {
            const double fan_in = static_cast<double>(l.weight.cols());
            const double bound = std::sqrt(6.0 / fan_in);
            for (Eigen::Index j = 0; j < l.weight.cols(); ++j)
                for (Eigen::Index i = 0; i < l.weight.rows(); ++i)
                    l.weight(i, j) = bound * (2.0 * uniform01(rng) - 1.0);
            l.bias.setZero();
        },
        layer);
}

std::size_t input_size(const Layer& layer) {
    return std::visit([](const auto& l) { return l.input_size(); }, layer);
}

std::size_t output_size(const Layer& layer) {
    return std::visit([](const auto& l) { return l.output_size(); }, layer);
}

}  // namespace molsrl::nn
