#pragma once

#include <cstddef>
#include <vector>

namespace ramix::nn {

// Dense row-major tensor of doubles, rank 2 (batch, features) or rank 3
// (batch, channels, length). Rows along the last axis are contiguous, which
// is what the kernels operate on.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros2(std::size_t batch, std::size_t features) {
    Tensor t;
    t.shape_ = {batch, features};
    t.data_.assign(batch * features, 0.0);
    return t;
  }

  static Tensor zeros3(std::size_t batch, std::size_t channels,
                       std::size_t length) {
    Tensor t;
    t.shape_ = {batch, channels, length};
    t.data_.assign(batch * channels * length, 0.0);
    return t;
  }

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t batch() const { return shape_.empty() ? 0 : shape_[0]; }
  std::size_t channels() const { return shape_[1]; }
  std::size_t length() const { return shape_[2]; }
  std::size_t features() const { return shape_[1]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  // Row pointers (contiguous along the last axis).
  double* row2(std::size_t b) { return data_.data() + b * shape_[1]; }
  const double* row2(std::size_t b) const { return data_.data() + b * shape_[1]; }
  double* row3(std::size_t b, std::size_t c) {
    return data_.data() + (b * shape_[1] + c) * shape_[2];
  }
  const double* row3(std::size_t b, std::size_t c) const {
    return data_.data() + (b * shape_[1] + c) * shape_[2];
  }

  double& at2(std::size_t b, std::size_t f) { return data_[b * shape_[1] + f]; }
  double at2(std::size_t b, std::size_t f) const { return data_[b * shape_[1] + f]; }
  double& at3(std::size_t b, std::size_t c, std::size_t i) {
    return data_[(b * shape_[1] + c) * shape_[2] + i];
  }
  double at3(std::size_t b, std::size_t c, std::size_t i) const {
    return data_[(b * shape_[1] + c) * shape_[2] + i];
  }

  // (b, c, l) -> (b, c*l) without copying layout (row-major already).
  Tensor reshape2(std::size_t batch, std::size_t features) const {
    Tensor t;
    t.shape_ = {batch, features};
    t.data_ = data_;
    return t;
  }

  bool all_finite() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// When enabled, layer and loss outputs are checked for NaN/Inf after every
// op; a violation raises numeric_error. Off by default (costs a pass over
// the data); tests and debug runs switch it on.
void set_finite_checks(bool enabled);
bool finite_checks_enabled();
void check_finite(const Tensor& t, const char* where);

}  // namespace ramix::nn
