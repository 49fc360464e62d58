#include "ramix/losses.hpp"

#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/layers.hpp"

namespace ramix::nn {

LossResult bce_with_logits(const Tensor& logits, const Tensor& targets) {
  if (logits.shape() != targets.shape() || logits.empty()) {
    throw numeric_error("bce_with_logits: shape mismatch");
  }
  const std::size_t n = logits.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double* z = logits.data();
  const double* y = targets.data();

  LossResult res;
  res.grad = logits;
  double* g = res.grad.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw numeric_error("bce_with_logits: targets must be 0 or 1");
    }
    const double zi = z[i];
    acc += std::max(zi, 0.0) - zi * y[i] + std::log1p(std::exp(-std::fabs(zi)));
    g[i] = (sigmoid_scalar(zi) - y[i]) * inv_n;
  }
  res.value = acc * inv_n;
  return res;
}

LossResult weighted_mse(const Tensor& pred, const Tensor& targets,
                        const Tensor& weights) {
  if (pred.shape() != targets.shape() || pred.shape() != weights.shape() ||
      pred.empty()) {
    throw numeric_error("weighted_mse: shape mismatch");
  }
  const std::size_t n = pred.size();
  const double* p = pred.data();
  const double* t = targets.data();
  const double* w = weights.data();

  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] >= 0.0)) {
      throw numeric_error("weighted_mse: negative weight");
    }
    wsum += w[i];
  }
  if (!(wsum > 0.0)) {
    throw numeric_error("weighted_mse: weights sum to zero");
  }

  LossResult res;
  res.grad = pred;
  double* g = res.grad.data();
  double acc = 0.0;
  const double inv_wsum = 1.0 / wsum;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p[i] - t[i];
    acc += w[i] * d * d;
    g[i] = 2.0 * w[i] * d * inv_wsum;
  }
  res.value = acc * inv_wsum;
  return res;
}

}  // namespace ramix::nn
