#pragma once

#include <string>
#include <vector>

#include "ramix/rng.hpp"
#include "ramix/spectrum.hpp"

namespace ramix {

enum class BaselineFamily { gaussian, sigmoid, exponential, polynomial };

const char* baseline_family_name(BaselineFamily f);
BaselineFamily baseline_family_from_name(const std::string& name);

// A sampled additive background curve. Exactly one parameter record is used,
// selected by `family`:
//   gaussian:    f(x) = A * exp(-(x - mu)^2 / (2 sigma2))
//   sigmoid:     f(x) = A / (1 + exp(-s (x - c)))
//   exponential: f(x) = A * exp(-s x)
//   polynomial:  f(xt) = sum_{i=1..n} a_i xt^i, xt = x mapped onto [-2.5, 2.5]
struct BaselineSpec {
  BaselineFamily family = BaselineFamily::gaussian;

  // gaussian
  double mu_cm1 = 0.0;
  double sigma2 = 0.0;
  // sigmoid
  double slope = 0.0;
  double centre_cm1 = 0.0;
  // gaussian / sigmoid / exponential
  double amplitude = 0.0;
  // polynomial: coefficients[i] multiplies xt^(i+1)
  std::vector<double> coefficients;

  // Checks the family parameter bounds; throws data_error on violation.
  void validate() const;
};

// Parameter intervals for each family (fixed sampling contract).
struct BaselineRanges {
  double gaussian_mu_lo = 1000.0, gaussian_mu_hi = 1500.0;
  double gaussian_sigma2 = 800.0;
  double gaussian_amp_lo = 0.0, gaussian_amp_hi = 0.3;
  double sigmoid_slope_lo = 0.001, sigmoid_slope_hi = 0.03;
  double sigmoid_centre_lo = 100.0, sigmoid_centre_hi = 2400.0;
  double sigmoid_amp_lo = 0.0, sigmoid_amp_hi = 0.5;
  double exponential_slope_lo = 0.001, exponential_slope_hi = 0.009;
  double exponential_amp_lo = 0.0, exponential_amp_hi = 1.0;
  int polynomial_degree_lo = 1, polynomial_degree_hi = 5;
};

// Pointwise evaluation of the baseline over a grid.
Spectrum eval_baseline(const BaselineSpec& spec, const WavenumberGrid& grid);

}  // namespace ramix
