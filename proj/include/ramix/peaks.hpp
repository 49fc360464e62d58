#pragma once

#include <vector>

#include "ramix/spectrum.hpp"

namespace ramix {

enum class PeakShape { lorentzian, gaussian };

// One spectral line. half_width is the half-width at half-maximum for the
// lorentzian profile and the gaussian sigma for the gaussian profile.
struct PeakModel {
  double center_cm1;
  double half_width_cm1;
  double amplitude;
  PeakShape shape;
};

// Sums the peak profiles over the grid and max-normalizes the result so the
// tallest point equals 1. Profiles:
//   lorentzian: A * w^2 / ((x - c)^2 + w^2)
//   gaussian:   A * exp(-(x - c)^2 / (2 w^2))
// Throws data_error for an empty peak list or a peak outside the grid range.
Spectrum synth_pure_spectrum(const std::vector<PeakModel>& peaks,
                             const WavenumberGrid& grid);

}  // namespace ramix
