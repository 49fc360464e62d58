#pragma once

#include <functional>
#include <vector>

#include "ramix/layers.hpp"

namespace ramix::nn {

// Central finite-difference verification of backprop gradients.
//
// `loss_fn` evaluates the scalar loss at the current parameter values;
// `backward_fn` zeroes the gradient accumulators and fills them by a full
// forward/backward pass. Every parameter is perturbed by +/-epsilon and the
// finite-difference slope is compared against the stored gradient. Returns
// the maximum over parameters of
//   |g_fd - g_bp| / max(1e-8, |g_fd| + |g_bp|).
//
// Intended for small models (<= ~1e4 parameters); cost is two loss
// evaluations per parameter.
double grad_check_max_rel_error(const std::vector<ParamBlock>& blocks,
                                const std::function<double()>& loss_fn,
                                const std::function<void()>& backward_fn,
                                double epsilon = 1e-6);

}  // namespace ramix::nn
