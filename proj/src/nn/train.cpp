#include "molsrl/nn/train.hpp"

#include <cmath>
#include <sstream>

namespace molsrl::nn {

namespace {

Matrix stack(std::span<const Transition* const> batch, bool next, std::size_t width) {
    Matrix x(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(batch.size()));
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto& src = next ? batch[b]->next_observation : batch[b]->observation;
        if (src.size() != width) throw DimensionError("train_step: observation size mismatch");
        x.col(static_cast<Eigen::Index>(b)) = Eigen::Map<const Vector>(src.data(), static_cast<Eigen::Index>(width));
    }
    return x;
}

std::size_t greedy_column(const Matrix& out, Eigen::Index col, std::size_t actions, const ccs::WeightVector& w) {
    const std::size_t n = w.size();
    std::size_t best = 0;
    double best_value = 0.0;
    for (std::size_t a = 0; a < actions; ++a) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += w[k] * out(static_cast<Eigen::Index>(a * n + k), col);
        if (a == 0 || s > best_value) {
            best = a;
            best_value = s;
        }
    }
    return best;
}

}  // namespace

std::size_t greedy_action(const Matrix& q, const ccs::WeightVector& w) {
    if (static_cast<std::size_t>(q.cols()) != w.size()) throw DimensionError("greedy_action: objective mismatch");
    std::size_t best = 0;
    double best_value = 0.0;
    for (Eigen::Index a = 0; a < q.rows(); ++a) {
        double s = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * q(a, static_cast<Eigen::Index>(k));
        if (a == 0 || s > best_value) {
            best = static_cast<std::size_t>(a);
            best_value = s;
        }
    }
    return best;
}

Matrix vector_targets(const QNetwork& target, std::span<const Transition* const> batch, const ccs::WeightVector& w,
                      double gamma) {
    const std::size_t n = target.objectives();
    if (w.size() != n) throw DimensionError("vector_targets: weight/objective mismatch");
    const Matrix next_q = target.forward(stack(batch, true, target.input_size()));
    Matrix y(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(batch.size()));
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto col = static_cast<Eigen::Index>(b);
        const Transition& t = *batch[b];
        if (t.reward.size() != n) throw DimensionError("vector_targets: reward size mismatch");
        const std::size_t a_star = t.terminal ? 0 : greedy_column(next_q, col, target.actions(), w);
        for (std::size_t k = 0; k < n; ++k) {
            const double bootstrap =
                t.terminal ? 0.0 : gamma * next_q(static_cast<Eigen::Index>(a_star * n + k), col);
            y(static_cast<Eigen::Index>(k), col) = t.reward[k] + bootstrap;
        }
    }
    return y;
}

double train_step(QNetwork& net, const QNetwork& target, std::span<const Transition* const> batch,
                  const ccs::WeightVector& w, double gamma, AdamState& adam) {
    if (batch.empty()) throw ContractViolation("train_step: empty batch");
    if (!net.same_architecture(target)) throw DimensionError("train_step: online/target architecture mismatch");
    const std::size_t n = net.objectives();
    const Matrix y = vector_targets(target, batch, w, gamma);
    const Matrix out = net.forward_train(stack(batch, false, net.input_size()));

    Matrix grad = Matrix::Zero(out.rows(), out.cols());
    const double scale = 1.0 / static_cast<double>(batch.size() * n);
    double loss = 0.0;
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto col = static_cast<Eigen::Index>(b);
        const std::size_t a = batch[b]->action;
        if (a >= net.actions()) throw ContractViolation("train_step: action out of range");
        for (std::size_t k = 0; k < n; ++k) {
            const auto row = static_cast<Eigen::Index>(a * n + k);
            const double err = out(row, col) - y(static_cast<Eigen::Index>(k), col);
            loss += err * err * scale;
            grad(row, col) = 2.0 * err * scale;
        }
    }
    if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "train_step: non-finite loss (batch " << batch.size() << ", Adam step " << adam.step
            << ", parameters finite: " << (net.all_finite() ? "yes" : "no") << ")";
        throw DivergenceError(msg.str());
    }
    net.backward(grad);
    adam_update(net, adam);
    if (!net.all_finite()) throw DivergenceError("train_step: parameters became non-finite after Adam step");
    return loss;
}

}  // namespace molsrl::nn
