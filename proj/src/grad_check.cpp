#include "ramix/grad_check.hpp"

#include <algorithm>
#include <cmath>

namespace ramix::nn {

double grad_check_max_rel_error(const std::vector<ParamBlock>& blocks,
                                const std::function<double()>& loss_fn,
                                const std::function<void()>& backward_fn,
                                double epsilon) {
  backward_fn();

  // Snapshot analytic gradients; loss_fn re-runs below will not disturb them,
  // but backward_fn won't be called again.
  std::vector<std::vector<double>> analytic;
  analytic.reserve(blocks.size());
  for (const ParamBlock& blk : blocks) {
    analytic.emplace_back(blk.grads, blk.grads + blk.count);
  }

  double worst = 0.0;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const ParamBlock& blk = blocks[bi];
    for (std::size_t i = 0; i < blk.count; ++i) {
      const double saved = blk.values[i];
      blk.values[i] = saved + epsilon;
      const double up = loss_fn();
      blk.values[i] = saved - epsilon;
      const double down = loss_fn();
      blk.values[i] = saved;

      const double fd = (up - down) / (2.0 * epsilon);
      const double bp = analytic[bi][i];
      const double rel =
          std::fabs(fd - bp) / std::max(1e-8, std::fabs(fd) + std::fabs(bp));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace ramix::nn
