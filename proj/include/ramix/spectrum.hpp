#pragma once

#include <cstddef>
#include <vector>

#include "ramix/grid.hpp"

namespace ramix {

// Intensity trace on a uniform wavenumber grid. Immutable after
// construction; all pipeline stages exchange these by value.
// Intensities may be negative (baselines and shifts can cross zero);
// only finiteness is enforced.
class Spectrum {
 public:
  Spectrum(WavenumberGrid grid, std::vector<double> intensities);

  const WavenumberGrid& grid() const { return grid_; }
  const std::vector<double>& intensities() const { return intensities_; }
  std::size_t size() const { return intensities_.size(); }
  double operator[](std::size_t i) const { return intensities_[i]; }
  const double* data() const { return intensities_.data(); }

 private:
  WavenumberGrid grid_;
  std::vector<double> intensities_;
};

// Piecewise-linear interpolation of `src` onto `dst_grid`. The source range
// must cover the destination range; throws data_error otherwise. Resampling
// onto the identical grid returns the input unchanged.
Spectrum resample(const Spectrum& src, const WavenumberGrid& dst_grid);

// (s - min) / (max - min): output spans [0, 1] with exact endpoints.
// Throws data_error for a constant spectrum.
Spectrum normalize_minmax(const Spectrum& s);

// Pointwise sum_k weights[k] * spectra[k]. All spectra must share one grid
// and weights must be non-negative.
Spectrum linear_combine(const std::vector<Spectrum>& spectra,
                        const std::vector<double>& weights);

}  // namespace ramix
