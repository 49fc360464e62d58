#include "ramix/adam.hpp"

#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix::nn {

Adam::Adam(const std::vector<ParamBlock>& blocks, Hyper hyper) : hyper_(hyper) {
  m_.reserve(blocks.size());
  v_.reserve(blocks.size());
  for (const ParamBlock& blk : blocks) {
    m_.emplace_back(blk.count, 0.0);
    v_.emplace_back(blk.count, 0.0);
  }
}

void Adam::step(const std::vector<ParamBlock>& blocks) {
  if (blocks.size() != m_.size()) {
    throw numeric_error("Adam::step: parameter block count changed");
  }
  ++step_;
  const double bc1 = 1.0 - std::pow(hyper_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(hyper_.beta2, static_cast<double>(step_));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const ParamBlock& blk = blocks[i];
    if (blk.count != m_[i].size()) {
      throw numeric_error("Adam::step: parameter block size changed");
    }
    kernels::adam_update(blk.values, m_[i].data(), v_[i].data(), blk.grads,
                         blk.count, hyper_.lr, hyper_.beta1, hyper_.beta2,
                         hyper_.eps, bc1, bc2);
  }
}

}  // namespace ramix::nn
