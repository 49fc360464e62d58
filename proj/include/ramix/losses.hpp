#pragma once

#include "ramix/tensor.hpp"

namespace ramix::nn {

struct LossResult {
  double value = 0.0;
  Tensor grad;  // d loss / d input, same shape as the input
};

// Mean binary cross-entropy over all elements, taking raw logits. Uses the
// stable form max(z,0) - z*y + log1p(exp(-|z|)); the gradient w.r.t. the
// logits is (sigmoid(z) - y) / count. Targets must be 0 or 1.
LossResult bce_with_logits(const Tensor& logits, const Tensor& targets);

// Weighted mean squared error sum(w (p-t)^2) / sum(w) over all elements,
// with gradient 2 w (p-t) / sum(w). Weights must be non-negative with a
// positive sum.
LossResult weighted_mse(const Tensor& pred, const Tensor& targets,
                        const Tensor& weights);

}  // namespace ramix::nn
