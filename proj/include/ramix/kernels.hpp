#pragma once

#include <cstddef>
#include <utility>

// Data-parallel inner loops used by the spectral pipeline and the network.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant. The backend is picked once at startup by
// CPU probing and can be overridden (mainly so tests can run both paths on
// the same machine and check equivalence).
//
// Elementwise kernels (axpy, scale_shift, normalize_affine, relu, adam_update,
// min_max) perform the same correctly-rounded operation per element in both
// backends, so their outputs are bitwise identical across backends. Reduction
// kernels (dot, sum) accumulate in lane order under AVX2 and may differ from
// the scalar path by a few ulps.

namespace ramix::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
// Throws std::runtime_error if the backend is not available on this CPU.
void set_backend(Backend b);

// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha * x[i]   (fused multiply-add per element)
void axpy(double alpha, const double* x, double* y, std::size_t n);

// y[i] = scale * x[i] + shift   (fused multiply-add per element)
void scale_shift(const double* x, double scale, double shift, double* y,
                 std::size_t n);

// y[i] = (x[i] - sub) / div. Division keeps the endpoints exact:
// x == sub maps to 0 and x == sub + div maps to 1.
void normalize_affine(const double* x, double sub, double div, double* y,
                      std::size_t n);

// y[i] = max(x[i], 0)
void relu(const double* x, double* y, std::size_t n);

// dx[i] = x[i] > 0 ? dy[i] : 0
void relu_backward(const double* x, const double* dy, double* dx,
                   std::size_t n);

// sum_i x[i]
double sum(const double* x, std::size_t n);

// (min, max) over x. n must be >= 1.
std::pair<double, double> min_max(const double* x, std::size_t n);

// In-place Adam update over one parameter block:
//   m = b1*m + (1-b1)*g
//   v = b2*v + (1-b2)*g^2
//   p -= lr * (m/bc1) / (sqrt(v/bc2) + eps)
// bc1/bc2 are the bias-correction terms (1 - b^step).
void adam_update(double* p, double* m, double* v, const double* g,
                 std::size_t n, double lr, double beta1, double beta2,
                 double eps, double bias_corr1, double bias_corr2);

namespace detail {
struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale_shift)(const double*, double, double, double*, std::size_t);
  void (*normalize_affine)(const double*, double, double, double*,
                           std::size_t);
  void (*relu)(const double*, double*, std::size_t);
  void (*relu_backward)(const double*, const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  std::pair<double, double> (*min_max)(const double*, std::size_t);
  void (*adam_update)(double*, double*, double*, const double*, std::size_t,
                      double, double, double, double, double, double);
};
}  // namespace detail

}  // namespace ramix::kernels
