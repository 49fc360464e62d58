#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "ramix/kernels.hpp"
#include "ramix/rng.hpp"
#include "test_util.hpp"

using namespace ramix;
namespace k = ramix::kernels;
using testutil::close_rel;
using testutil::random_vector;

namespace {

// Runs `fn` once per available backend and hands the results to `compare`.
template <typename Fn>
void on_each_backend(Fn fn) {
  const k::Backend saved = k::active_backend();
  fn(k::Backend::scalar);
  if (k::backend_available(k::Backend::avx2)) {
    k::set_backend(k::Backend::avx2);
    fn(k::Backend::avx2);
  }
  k::set_backend(saved);
}

struct BackendGuard {
  k::Backend saved = k::active_backend();
  ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("backend dispatch") {
  CHECK(k::backend_available(k::Backend::scalar));
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  if (k::backend_available(k::Backend::avx2)) {
    k::set_backend(k::Backend::avx2);
    CHECK(k::active_backend() == k::Backend::avx2);
  } else {
    CHECK_THROWS(k::set_backend(k::Backend::avx2));
  }
}

TEST_CASE("dot: hand cases") {
  BackendGuard guard;
  on_each_backend([](k::Backend) {
    const std::vector<double> a = {1, 2, 3};
    const std::vector<double> b = {4, 5, 6};
    CHECK(k::dot(a.data(), b.data(), 3) == doctest::Approx(32.0));
    CHECK(k::dot(a.data(), b.data(), 0) == 0.0);
  });
}

TEST_CASE("scalar vs avx2 equivalence on random data") {
  if (!k::backend_available(k::Backend::avx2)) return;
  BackendGuard guard;
  Rng rng(20240811);

  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.uniform_below(300);
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    const double alpha = rng.uniform(-2.0, 2.0);

    k::set_backend(k::Backend::scalar);
    const double dot_s = k::dot(a.data(), b.data(), n);
    const double sum_s = k::sum(a.data(), n);
    const auto mm_s = k::min_max(a.data(), n);
    std::vector<double> axpy_s = b;
    k::axpy(alpha, a.data(), axpy_s.data(), n);
    std::vector<double> ss_s(n);
    k::scale_shift(a.data(), alpha, 0.25, ss_s.data(), n);
    std::vector<double> na_s(n);
    k::normalize_affine(a.data(), mm_s.first, mm_s.second - mm_s.first + 1e-9,
                        na_s.data(), n);
    std::vector<double> relu_s(n);
    k::relu(a.data(), relu_s.data(), n);
    std::vector<double> rb_s(n);
    k::relu_backward(a.data(), b.data(), rb_s.data(), n);

    k::set_backend(k::Backend::avx2);
    const double dot_v = k::dot(a.data(), b.data(), n);
    const double sum_v = k::sum(a.data(), n);
    const auto mm_v = k::min_max(a.data(), n);
    std::vector<double> axpy_v = b;
    k::axpy(alpha, a.data(), axpy_v.data(), n);
    std::vector<double> ss_v(n);
    k::scale_shift(a.data(), alpha, 0.25, ss_v.data(), n);
    std::vector<double> na_v(n);
    k::normalize_affine(a.data(), mm_s.first, mm_s.second - mm_s.first + 1e-9,
                        na_v.data(), n);
    std::vector<double> relu_v(n);
    k::relu(a.data(), relu_v.data(), n);
    std::vector<double> rb_v(n);
    k::relu_backward(a.data(), b.data(), rb_v.data(), n);

    // Reductions may reassociate; everything elementwise must match bitwise.
    CHECK(close_rel(dot_s, dot_v, 1e-13));
    CHECK(close_rel(sum_s, sum_v, 1e-13));
    CHECK(mm_s.first == mm_v.first);
    CHECK(mm_s.second == mm_v.second);
    CHECK(axpy_s == axpy_v);
    CHECK(ss_s == ss_v);
    CHECK(na_s == na_v);
    CHECK(relu_s == relu_v);
    CHECK(rb_s == rb_v);
  }
}

TEST_CASE("adam_update backends match bitwise") {
  if (!k::backend_available(k::Backend::avx2)) return;
  BackendGuard guard;
  Rng rng(7);
  const std::size_t n = 103;
  const auto g = random_vector(rng, n);
  const auto p0 = random_vector(rng, n);
  const auto m0 = random_vector(rng, n, 0.0, 0.1);
  const auto v0 = random_vector(rng, n, 0.0, 0.1);

  auto run = [&](k::Backend b) {
    k::set_backend(b);
    auto p = p0;
    auto m = m0;
    auto v = v0;
    k::adam_update(p.data(), m.data(), v.data(), g.data(), n, 1e-3, 0.9, 0.999,
                   1e-8, 0.1, 0.001);
    return std::tuple{p, m, v};
  };
  const auto [ps, ms, vs] = run(k::Backend::scalar);
  const auto [pv, mv, vv] = run(k::Backend::avx2);
  CHECK(ps == pv);
  CHECK(ms == mv);
  CHECK(vs == vv);
}

TEST_CASE("min_max and normalize endpoints") {
  BackendGuard guard;
  on_each_backend([](k::Backend) {
    const std::vector<double> x = {3.0, -1.0, 7.0, 2.0, 7.0};
    const auto [lo, hi] = k::min_max(x.data(), x.size());
    CHECK(lo == -1.0);
    CHECK(hi == 7.0);
    std::vector<double> y(x.size());
    k::normalize_affine(x.data(), lo, hi - lo, y.data(), x.size());
    CHECK(y[1] == 0.0);  // min maps to exactly 0
    CHECK(y[2] == 1.0);  // max maps to exactly 1
  });
}

TEST_CASE("axpy accumulates in place") {
  BackendGuard guard;
  on_each_backend([](k::Backend) {
    std::vector<double> y = {1, 1, 1, 1, 1, 1};
    const std::vector<double> x = {1, 2, 3, 4, 5, 6};
    k::axpy(0.5, x.data(), y.data(), y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      CHECK(y[i] == doctest::Approx(1.0 + 0.5 * x[i]));
    }
  });
}

TEST_CASE("adam single step with unit gradient moves by ~lr") {
  BackendGuard guard;
  on_each_backend([](k::Backend) {
    double p = 1.0;
    double m = 0.0;
    double v = 0.0;
    const double g = 1.0;
    const double lr = 1e-3;
    // First step: bias-corrected mhat = g, vhat = g^2.
    k::adam_update(&p, &m, &v, &g, 1, lr, 0.9, 0.999, 1e-8, 1.0 - 0.9,
                   1.0 - 0.999);
    CHECK(p == doctest::Approx(1.0 - lr).epsilon(1e-6));
  });
}
