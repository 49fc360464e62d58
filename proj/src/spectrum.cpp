#include "ramix/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix {

Spectrum::Spectrum(WavenumberGrid grid, std::vector<double> intensities)
    : grid_(grid), intensities_(std::move(intensities)) {
  if (intensities_.size() != grid_.n_points()) {
    throw data_error("Spectrum: intensity count " +
                     std::to_string(intensities_.size()) +
                     " does not match grid points " +
                     std::to_string(grid_.n_points()));
  }
  for (double v : intensities_) {
    if (!std::isfinite(v)) {
      throw data_error("Spectrum: non-finite intensity value");
    }
  }
}

Spectrum resample(const Spectrum& src, const WavenumberGrid& dst_grid) {
  const WavenumberGrid& sg = src.grid();
  if (sg == dst_grid) return src;
  if (sg.start_cm1() > dst_grid.start_cm1() || sg.end_cm1() < dst_grid.end_cm1()) {
    throw data_error("resample: source range [" +
                     std::to_string(sg.start_cm1()) + ", " +
                     std::to_string(sg.end_cm1()) +
                     "] does not cover destination range [" +
                     std::to_string(dst_grid.start_cm1()) + ", " +
                     std::to_string(dst_grid.end_cm1()) + "]");
  }

  const double spacing = sg.spacing();
  const std::size_t last = sg.n_points() - 1;
  std::vector<double> out(dst_grid.n_points());
  for (std::size_t i = 0; i < dst_grid.n_points(); ++i) {
    const double x = dst_grid.point(i);
    double pos = (x - sg.start_cm1()) / spacing;
    std::size_t i0 = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
    if (i0 >= last) i0 = last - 1;
    const double t = (x - sg.point(i0)) / spacing;
    const double y0 = src[i0];
    const double y1 = src[i0 + 1];
    double y = y0 + t * (y1 - y0);
    // Interpolated value stays inside the bracketing samples.
    y = std::clamp(y, std::min(y0, y1), std::max(y0, y1));
    out[i] = y;
  }
  return Spectrum(dst_grid, std::move(out));
}

Spectrum normalize_minmax(const Spectrum& s) {
  const auto [lo, hi] = kernels::min_max(s.data(), s.size());
  if (!(hi > lo)) {
    throw data_error("normalize_minmax: degenerate constant spectrum");
  }
  std::vector<double> out(s.size());
  kernels::normalize_affine(s.data(), lo, hi - lo, out.data(), s.size());
  return Spectrum(s.grid(), std::move(out));
}

Spectrum linear_combine(const std::vector<Spectrum>& spectra,
                        const std::vector<double>& weights) {
  if (spectra.empty()) {
    throw data_error("linear_combine: no spectra given");
  }
  if (spectra.size() != weights.size()) {
    throw data_error("linear_combine: " + std::to_string(spectra.size()) +
                     " spectra vs " + std::to_string(weights.size()) +
                     " weights");
  }
  const WavenumberGrid& grid = spectra.front().grid();
  for (const Spectrum& s : spectra) {
    if (s.grid() != grid) {
      throw data_error("linear_combine: spectra are on different grids");
    }
  }
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw data_error("linear_combine: weights must be non-negative");
    }
  }
  std::vector<double> out(grid.n_points(), 0.0);
  for (std::size_t k = 0; k < spectra.size(); ++k) {
    if (weights[k] != 0.0) {
      kernels::axpy(weights[k], spectra[k].data(), out.data(), out.size());
    }
  }
  return Spectrum(grid, std::move(out));
}

}  // namespace ramix
