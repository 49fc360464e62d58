#pragma once

#include <cstdint>
#include <vector>

#include "ramix/layers.hpp"

namespace ramix::nn {

// Adam with bias correction over a fixed set of parameter blocks. Moment
// buffers are laid out per block in registration order, so the update is
// fully deterministic.
class Adam {
 public:
  struct Hyper {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
  };

  Adam(const std::vector<ParamBlock>& blocks, Hyper hyper);
  explicit Adam(const std::vector<ParamBlock>& blocks) : Adam(blocks, Hyper{}) {}

  // Applies one update from the gradients currently stored in the blocks.
  void step(const std::vector<ParamBlock>& blocks);

  std::uint64_t step_count() const { return step_; }
  const Hyper& hyper() const { return hyper_; }

 private:
  Hyper hyper_;
  std::uint64_t step_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

}  // namespace ramix::nn
