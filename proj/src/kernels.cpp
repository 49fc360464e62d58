#include "ramix/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ramix::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

void scale_shift(const double* x, double scale, double shift, double* y,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(scale, x[i], shift);
}

void normalize_affine(const double* x, double sub, double div, double* y,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = (x[i] - sub) / div;
}

void relu(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward(const double* x, const double* dy, double* dx,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

std::pair<double, double> min_max(const double* x, std::size_t n) {
  double lo = x[0];
  double hi = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] < lo) lo = x[i];
    if (x[i] > hi) hi = x[i];
  }
  return {lo, hi};
}

void adam_update(double* p, double* m, double* v, const double* g,
                 std::size_t n, double lr, double beta1, double beta2,
                 double eps, double bias_corr1, double bias_corr2) {
  const double omb1 = 1.0 - beta1;
  const double omb2 = 1.0 - beta2;
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = g[i];
    m[i] = std::fma(beta1, m[i], omb1 * gi);
    v[i] = std::fma(beta2, v[i], omb2 * (gi * gi));
    const double mhat = m[i] / bias_corr1;
    const double vhat = v[i] / bias_corr2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace scalar

#if defined(RAMIX_HAVE_AVX2_TU)
namespace avx2 {
double dot(const double*, const double*, std::size_t);
void axpy(double, const double*, double*, std::size_t);
void scale_shift(const double*, double, double, double*, std::size_t);
void normalize_affine(const double*, double, double, double*, std::size_t);
void relu(const double*, double*, std::size_t);
void relu_backward(const double*, const double*, double*, std::size_t);
double sum(const double*, std::size_t);
std::pair<double, double> min_max(const double*, std::size_t);
void adam_update(double*, double*, double*, const double*, std::size_t, double,
                 double, double, double, double, double);
}  // namespace avx2
#endif

namespace {

constexpr detail::KernelTable kScalarTable = {
    scalar::dot,           scalar::axpy,   scalar::scale_shift,
    scalar::normalize_affine, scalar::relu, scalar::relu_backward,
    scalar::sum,           scalar::min_max, scalar::adam_update,
};

#if defined(RAMIX_HAVE_AVX2_TU)
constexpr detail::KernelTable kAvx2Table = {
    avx2::dot,           avx2::axpy,   avx2::scale_shift,
    avx2::normalize_affine, avx2::relu, avx2::relu_backward,
    avx2::sum,           avx2::min_max, avx2::adam_update,
};
#endif

bool cpu_has_avx2() {
#if defined(RAMIX_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend;
  const detail::KernelTable* table;

  Dispatch() {
#if defined(RAMIX_HAVE_AVX2_TU)
    if (cpu_has_avx2()) {
      backend = Backend::avx2;
      table = &kAvx2Table;
      return;
    }
#endif
    backend = Backend::scalar;
    table = &kScalarTable;
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return cpu_has_avx2();
}

Backend active_backend() { return dispatch().backend; }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("kernels: backend not available: ") +
                             backend_name(b));
  }
  dispatch().backend = b;
#if defined(RAMIX_HAVE_AVX2_TU)
  dispatch().table = (b == Backend::avx2) ? &kAvx2Table : &kScalarTable;
#else
  dispatch().table = &kScalarTable;
#endif
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  dispatch().table->axpy(alpha, x, y, n);
}

void scale_shift(const double* x, double scale, double shift, double* y,
                 std::size_t n) {
  dispatch().table->scale_shift(x, scale, shift, y, n);
}

void normalize_affine(const double* x, double sub, double div, double* y,
                      std::size_t n) {
  dispatch().table->normalize_affine(x, sub, div, y, n);
}

void relu(const double* x, double* y, std::size_t n) {
  dispatch().table->relu(x, y, n);
}

void relu_backward(const double* x, const double* dy, double* dx,
                   std::size_t n) {
  dispatch().table->relu_backward(x, dy, dx, n);
}

double sum(const double* x, std::size_t n) { return dispatch().table->sum(x, n); }

std::pair<double, double> min_max(const double* x, std::size_t n) {
  return dispatch().table->min_max(x, n);
}

void adam_update(double* p, double* m, double* v, const double* g,
                 std::size_t n, double lr, double beta1, double beta2,
                 double eps, double bias_corr1, double bias_corr2) {
  dispatch().table->adam_update(p, m, v, g, n, lr, beta1, beta2, eps,
                                bias_corr1, bias_corr2);
}

}  // namespace ramix::kernels
