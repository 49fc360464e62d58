#include "ramix/baseline.hpp"

#include <cmath>

#include "ramix/errors.hpp"

namespace ramix {

const char* baseline_family_name(BaselineFamily f) {
  switch (f) {
    case BaselineFamily::gaussian:
      return "gaussian";
    case BaselineFamily::sigmoid:
      return "sigmoid";
    case BaselineFamily::exponential:
      return "exponential";
    case BaselineFamily::polynomial:
      return "polynomial";
  }
  return "unknown";
}

BaselineFamily baseline_family_from_name(const std::string& name) {
  if (name == "gaussian") return BaselineFamily::gaussian;
  if (name == "sigmoid") return BaselineFamily::sigmoid;
  if (name == "exponential") return BaselineFamily::exponential;
  if (name == "polynomial") return BaselineFamily::polynomial;
  throw data_error("baseline: unknown family '" + name + "'");
}

void BaselineSpec::validate() const {
  const BaselineRanges r;
  auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  switch (family) {
    case BaselineFamily::gaussian:
      if (!in(mu_cm1, r.gaussian_mu_lo, r.gaussian_mu_hi) ||
          sigma2 != r.gaussian_sigma2 ||
          !in(amplitude, r.gaussian_amp_lo, r.gaussian_amp_hi)) {
        throw data_error("baseline: gaussian parameters out of range");
      }
      break;
    case BaselineFamily::sigmoid:
      if (!in(slope, r.sigmoid_slope_lo, r.sigmoid_slope_hi) ||
          !in(centre_cm1, r.sigmoid_centre_lo, r.sigmoid_centre_hi) ||
          !in(amplitude, r.sigmoid_amp_lo, r.sigmoid_amp_hi)) {
        throw data_error("baseline: sigmoid parameters out of range");
      }
      break;
    case BaselineFamily::exponential:
      if (!in(slope, r.exponential_slope_lo, r.exponential_slope_hi) ||
          !in(amplitude, r.exponential_amp_lo, r.exponential_amp_hi)) {
        throw data_error("baseline: exponential parameters out of range");
      }
      break;
    case BaselineFamily::polynomial: {
      const auto degree = static_cast<int>(coefficients.size());
      if (degree < r.polynomial_degree_lo || degree > r.polynomial_degree_hi) {
        throw data_error("baseline: polynomial degree out of range");
      }
      for (double a : coefficients) {
        if (!std::isfinite(a)) {
          throw data_error("baseline: non-finite polynomial coefficient");
        }
      }
      break;
    }
  }
}

Spectrum eval_baseline(const BaselineSpec& spec, const WavenumberGrid& grid) {
  spec.validate();
  std::vector<double> out(grid.n_points());
  switch (spec.family) {
    case BaselineFamily::gaussian:
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = grid.point(i) - spec.mu_cm1;
        out[i] = spec.amplitude * std::exp(-(d * d) / (2.0 * spec.sigma2));
      }
      break;
    case BaselineFamily::sigmoid:
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double z = spec.slope * (grid.point(i) - spec.centre_cm1);
        // Stable in both tails.
        out[i] = z >= 0.0 ? spec.amplitude / (1.0 + std::exp(-z))
                          : spec.amplitude * std::exp(z) / (1.0 + std::exp(z));
      }
      break;
    case BaselineFamily::exponential:
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = spec.amplitude * std::exp(-spec.slope * grid.point(i));
      }
      break;
    case BaselineFamily::polynomial:
      for (std::size_t i = 0; i < out.size(); ++i) {
        const double xt = grid.to_unit_band(grid.point(i));
        // Horner over a_n .. a_1, then one final multiply by xt (no a_0 term).
        double acc = 0.0;
        for (std::size_t k = spec.coefficients.size(); k-- > 0;) {
          acc = acc * xt + spec.coefficients[k];
        }
        out[i] = acc * xt;
      }
      break;
  }
  return Spectrum(grid, std::move(out));
}

}  // namespace ramix
