#pragma once

#include <cstdint>
#include <span>

#include "molsrl/ccs/types.hpp"
#include "molsrl/nn/qnetwork.hpp"

namespace molsrl::nn {

struct GradientCheckOptions {
    double step = 1e-5;
    /// Regression target for every Q entry.
    double target = 0.5;
    /// Parameters checked per tensor; 0 checks all of them. Sampled
    /// uniformly without replacement when smaller than the tensor.
    std::size_t max_per_block = 0;
    std::uint64_t sample_seed = 0;
    /// Gradients smaller than this in magnitude are compared absolutely.
    double magnitude_floor = 1e-7;
};

/// Weighted squared error L = mean_{a,k} w_k (Q_{a,k} - target)^2 for one
/// input; the loss the check differentiates.
double scalarised_probe_loss(const QNetwork& net, std::span<const double> features, const ccs::WeightVector& w,
                             double target);

/// Compares the backpropagated gradient of scalarised_probe_loss against
/// central finite differences and returns the maximum relative error
/// |g_analytic - g_numeric| / max(|g_analytic|, |g_numeric|, floor).
double gradient_check(QNetwork net, std::span<const double> features, const ccs::WeightVector& w,
                      const GradientCheckOptions& options = {});

}  // namespace molsrl::nn
