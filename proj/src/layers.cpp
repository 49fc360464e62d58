#include "ramix/layers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix::nn {

namespace {

bool g_finite_checks = false;

void he_or_glorot_fill(std::vector<double>& w, std::size_t fan_in,
                       std::size_t fan_out, InitKind kind, Rng& rng) {
  const double limit =
      kind == InitKind::he_uniform
          ? std::sqrt(6.0 / static_cast<double>(fan_in))
          : std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double& v : w) v = rng.uniform(-limit, limit);
}

}  // namespace

void set_finite_checks(bool enabled) { g_finite_checks = enabled; }
bool finite_checks_enabled() { return g_finite_checks; }

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_finite(const Tensor& t, const char* where) {
  if (g_finite_checks && !t.all_finite()) {
    throw numeric_error(std::string(where) + ": non-finite value in tensor");
  }
}

// ---------------------------------------------------------------------------
// Conv1D

Conv1D::Conv1D(std::size_t in_channels, std::size_t out_channels,
               std::size_t ksize)
    : in_(in_channels), out_(out_channels), ksize_(ksize) {
  if (ksize % 2 == 0 || ksize == 0) {
    throw config_error("Conv1D: kernel size must be odd");
  }
  w_.assign(out_ * in_ * ksize_, 0.0);
  b_.assign(out_, 0.0);
  dw_.assign(w_.size(), 0.0);
  db_.assign(b_.size(), 0.0);
}

void Conv1D::init(Rng& rng, InitKind kind) {
  he_or_glorot_fill(w_, in_ * ksize_, out_ * ksize_, kind, rng);
  std::fill(b_.begin(), b_.end(), 0.0);
}

Tensor Conv1D::forward(const Tensor& x) const {
  if (x.rank() != 3 || x.channels() != in_) {
    throw numeric_error("Conv1D::forward: input shape mismatch");
  }
  const std::size_t batch = x.batch();
  const std::size_t len = x.length();
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(ksize_ / 2);
  const auto slen = static_cast<std::ptrdiff_t>(len);

  Tensor y = Tensor::zeros3(batch, out_, len);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t m = 0; m < out_; ++m) {
      double* yrow = y.row3(b, m);
      std::fill(yrow, yrow + len, b_[m]);
      for (std::size_t c = 0; c < in_; ++c) {
        const double* xrow = x.row3(b, c);
        const double* wrow = &w_[(m * in_ + c) * ksize_];
        for (std::size_t k = 0; k < ksize_; ++k) {
          const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) - half;
          const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, -off);
          const std::ptrdiff_t i1 = std::min<std::ptrdiff_t>(slen, slen - off);
          if (i1 > i0) {
            kernels::axpy(wrow[k], xrow + i0 + off, yrow + i0,
                          static_cast<std::size_t>(i1 - i0));
          }
        }
      }
    }
  }
  check_finite(y, "Conv1D::forward");
  return y;
}

Tensor Conv1D::backward(const Tensor& x, const Tensor& dy) {
  const std::size_t batch = x.batch();
  const std::size_t len = x.length();
  if (dy.rank() != 3 || dy.channels() != out_ || dy.length() != len ||
      dy.batch() != batch) {
    throw numeric_error("Conv1D::backward: gradient shape mismatch");
  }
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(ksize_ / 2);
  const auto slen = static_cast<std::ptrdiff_t>(len);

  Tensor dx = Tensor::zeros3(batch, in_, len);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t m = 0; m < out_; ++m) {
      const double* dyrow = dy.row3(b, m);
      db_[m] += kernels::sum(dyrow, len);
      for (std::size_t c = 0; c < in_; ++c) {
        const double* xrow = x.row3(b, c);
        double* dxrow = dx.row3(b, c);
        double* dwrow = &dw_[(m * in_ + c) * ksize_];
        const double* wrow = &w_[(m * in_ + c) * ksize_];
        for (std::size_t k = 0; k < ksize_; ++k) {
          const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) - half;
          const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, -off);
          const std::ptrdiff_t i1 = std::min<std::ptrdiff_t>(slen, slen - off);
          if (i1 > i0) {
            const auto n = static_cast<std::size_t>(i1 - i0);
            dwrow[k] += kernels::dot(dyrow + i0, xrow + i0 + off, n);
            kernels::axpy(wrow[k], dyrow + i0, dxrow + i0 + off, n);
          }
        }
      }
    }
  }
  check_finite(dx, "Conv1D::backward");
  return dx;
}

void Conv1D::zero_grads() {
  std::fill(dw_.begin(), dw_.end(), 0.0);
  std::fill(db_.begin(), db_.end(), 0.0);
}

std::vector<ParamBlock> Conv1D::params() {
  return {{w_.data(), dw_.data(), w_.size()}, {b_.data(), db_.data(), b_.size()}};
}

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(std::size_t in_features, std::size_t out_features)
    : in_(in_features), out_(out_features) {
  w_.assign(out_ * in_, 0.0);
  b_.assign(out_, 0.0);
  dw_.assign(w_.size(), 0.0);
  db_.assign(b_.size(), 0.0);
}

void Dense::init(Rng& rng, InitKind kind) {
  he_or_glorot_fill(w_, in_, out_, kind, rng);
  std::fill(b_.begin(), b_.end(), 0.0);
}

Tensor Dense::forward(const Tensor& x) const {
  if (x.rank() != 2 || x.features() != in_) {
    throw numeric_error("Dense::forward: input shape mismatch");
  }
  const std::size_t batch = x.batch();
  Tensor y = Tensor::zeros2(batch, out_);
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xrow = x.row2(b);
    double* yrow = y.row2(b);
    for (std::size_t o = 0; o < out_; ++o) {
      yrow[o] = b_[o] + kernels::dot(&w_[o * in_], xrow, in_);
    }
  }
  check_finite(y, "Dense::forward");
  return y;
}

Tensor Dense::backward(const Tensor& x, const Tensor& dy) {
  const std::size_t batch = x.batch();
  if (dy.rank() != 2 || dy.features() != out_ || dy.batch() != batch) {
    throw numeric_error("Dense::backward: gradient shape mismatch");
  }
  Tensor dx = Tensor::zeros2(batch, in_);
  for (std::size_t b = 0; b < batch; ++b) {
    const double* xrow = x.row2(b);
    const double* dyrow = dy.row2(b);
    double* dxrow = dx.row2(b);
    for (std::size_t o = 0; o < out_; ++o) {
      const double g = dyrow[o];
      if (g != 0.0) {
        kernels::axpy(g, xrow, &dw_[o * in_], in_);
        kernels::axpy(g, &w_[o * in_], dxrow, in_);
      }
      db_[o] += g;
    }
  }
  check_finite(dx, "Dense::backward");
  return dx;
}

void Dense::zero_grads() {
  std::fill(dw_.begin(), dw_.end(), 0.0);
  std::fill(db_.begin(), db_.end(), 0.0);
}

std::vector<ParamBlock> Dense::params() {
  return {{w_.data(), dw_.data(), w_.size()}, {b_.data(), db_.data(), b_.size()}};
}

// ---------------------------------------------------------------------------
// Activations and pooling

Tensor relu_forward(const Tensor& x) {
  Tensor y = x;
  kernels::relu(x.data(), y.data(), x.size());
  check_finite(y, "relu");
  return y;
}

Tensor relu_backward_pass(const Tensor& x, const Tensor& dy) {
  Tensor dx = dy;
  kernels::relu_backward(x.data(), dy.data(), dx.data(), x.size());
  return dx;
}

double sigmoid_scalar(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Tensor sigmoid_forward(const Tensor& x) {
  Tensor y = x;
  double* out = y.data();
  const double* in = x.data();
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = sigmoid_scalar(in[i]);
  check_finite(y, "sigmoid");
  return y;
}

MaxPoolResult maxpool1d(const Tensor& x, std::size_t window) {
  if (x.rank() != 3 || x.length() == 0) {
    throw numeric_error("maxpool1d: empty input");
  }
  if (window < 1) {
    throw config_error("maxpool1d: window must be >= 1");
  }
  const std::size_t batch = x.batch();
  const std::size_t chans = x.channels();
  const std::size_t len = x.length();
  const std::size_t out_len = (len + window - 1) / window;

  MaxPoolResult res;
  res.output = Tensor::zeros3(batch, chans, out_len);
  res.argmax.resize(batch * chans * out_len);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t c = 0; c < chans; ++c) {
      const double* xrow = x.row3(b, c);
      double* yrow = res.output.row3(b, c);
      std::size_t* arow = &res.argmax[(b * chans + c) * out_len];
      for (std::size_t o = 0; o < out_len; ++o) {
        const std::size_t begin = o * window;
        const std::size_t end = std::min(begin + window, len);
        std::size_t best = begin;
        for (std::size_t i = begin + 1; i < end; ++i) {
          if (xrow[i] > xrow[best]) best = i;
        }
        yrow[o] = xrow[best];
        arow[o] = best;
      }
    }
  }
  return res;
}

Tensor maxpool1d_backward(const MaxPoolResult& cache, const Tensor& dy,
                          std::size_t input_length) {
  const std::size_t batch = dy.batch();
  const std::size_t chans = dy.channels();
  const std::size_t out_len = dy.length();
  Tensor dx = Tensor::zeros3(batch, chans, input_length);
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t c = 0; c < chans; ++c) {
      const double* dyrow = dy.row3(b, c);
      double* dxrow = dx.row3(b, c);
      const std::size_t* arow = &cache.argmax[(b * chans + c) * out_len];
      for (std::size_t o = 0; o < out_len; ++o) {
        dxrow[arow[o]] += dyrow[o];
      }
    }
  }
  return dx;
}

}  // namespace ramix::nn
