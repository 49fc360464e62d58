#pragma once

#include <cstdint>
#include <vector>

#include "ramix/rng.hpp"
#include "ramix/tensor.hpp"

namespace ramix::nn {

// Parameter block: a layer's weights with their gradient accumulator,
// exposed for the optimizer, the checkpointer and gradient checking.
struct ParamBlock {
  double* values;
  double* grads;
  std::size_t count;
};

enum class InitKind : std::uint8_t { he_uniform, glorot_uniform };

// 1-D convolution, stride 1, same-length zero padding, odd kernel size.
// Weight layout: w[out][in][k] contiguous; output channel m at position i is
// bias[m] + sum_{c,k} w[m][c][k] * x[c][i + k - ksize/2].
class Conv1D {
 public:
  Conv1D(std::size_t in_channels, std::size_t out_channels, std::size_t ksize);

  void init(Rng& rng, InitKind kind);

  // x: (B, in, L) -> (B, out, L). Keeps no internal state.
  Tensor forward(const Tensor& x) const;

  // Accumulates dw/db; returns dx. `x` must be the forward input.
  Tensor backward(const Tensor& x, const Tensor& dy);

  void zero_grads();
  std::vector<ParamBlock> params();
  std::size_t param_count() const { return w_.size() + b_.size(); }

  std::size_t in_channels() const { return in_; }
  std::size_t out_channels() const { return out_; }
  std::size_t kernel_size() const { return ksize_; }

 private:
  std::size_t in_, out_, ksize_;
  std::vector<double> w_, b_, dw_, db_;
};

// Fully connected layer; weight layout w[out][in].
class Dense {
 public:
  Dense(std::size_t in_features, std::size_t out_features);

  void init(Rng& rng, InitKind kind);

  // x: (B, in) -> (B, out)
  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& dy);

  void zero_grads();
  std::vector<ParamBlock> params();
  std::size_t param_count() const { return w_.size() + b_.size(); }

  std::size_t in_features() const { return in_; }
  std::size_t out_features() const { return out_; }

 private:
  std::size_t in_, out_;
  std::vector<double> w_, b_, dw_, db_;
};

// max(x, 0) elementwise.
Tensor relu_forward(const Tensor& x);
// dx = dy where x > 0, else 0.
Tensor relu_backward_pass(const Tensor& x, const Tensor& dy);

// Numerically stable logistic, elementwise.
Tensor sigmoid_forward(const Tensor& x);
double sigmoid_scalar(double z);

// Window-w max pooling with stride w along the last axis; a trailing
// remainder window shorter than w is passed through. Output length is
// ceil(L / w). argmax indices (into the input length axis) are recorded for
// backward routing.
struct MaxPoolResult {
  Tensor output;
  std::vector<std::size_t> argmax;  // flattened (b, c, out_pos) -> input pos
};

MaxPoolResult maxpool1d(const Tensor& x, std::size_t window = 2);
Tensor maxpool1d_backward(const MaxPoolResult& cache, const Tensor& dy,
                          std::size_t input_length);

}  // namespace ramix::nn
