#include "ramix/peaks.hpp"

#include <cmath>
#include <string>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix {

Spectrum synth_pure_spectrum(const std::vector<PeakModel>& peaks,
                             const WavenumberGrid& grid) {
  if (peaks.empty()) {
    throw data_error("synth_pure_spectrum: empty peak list");
  }
  for (const PeakModel& p : peaks) {
    if (!(p.half_width_cm1 > 0.0)) {
      throw data_error("synth_pure_spectrum: half_width must be > 0");
    }
    if (!(p.amplitude > 0.0)) {
      throw data_error("synth_pure_spectrum: amplitude must be > 0");
    }
    if (p.center_cm1 < grid.start_cm1() || p.center_cm1 > grid.end_cm1()) {
      throw data_error("synth_pure_spectrum: peak center " +
                       std::to_string(p.center_cm1) + " outside grid range");
    }
  }

  std::vector<double> out(grid.n_points(), 0.0);
  for (const PeakModel& p : peaks) {
    const double w2 = p.half_width_cm1 * p.half_width_cm1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double d = grid.point(i) - p.center_cm1;
      if (p.shape == PeakShape::lorentzian) {
        out[i] += p.amplitude * w2 / (d * d + w2);
      } else {
        out[i] += p.amplitude * std::exp(-(d * d) / (2.0 * w2));
      }
    }
  }

  const double peak = kernels::min_max(out.data(), out.size()).second;
  for (double& v : out) v /= peak;
  return Spectrum(grid, std::move(out));
}

}  // namespace ramix
