#pragma once

#include <cstdint>
#include <set>

#include "ramix/baseline.hpp"
#include "ramix/rng.hpp"
#include "ramix/spectrum.hpp"

namespace ramix {

// Random-transform policy for training-set augmentation. Defaults keep the
// perturbations mild enough that peak structure survives; the polynomial
// coefficient for degree i is drawn from coeff range scaled by 2.5^(1-i),
// which caps the evaluated curve at 1.25 over the band (see sample_baseline).
struct AugmentConfig {
  double shift_lo = -0.1, shift_hi = 0.1;
  double scale_lo = 0.8, scale_hi = 1.2;
  std::set<BaselineFamily> families_enabled = {
      BaselineFamily::gaussian, BaselineFamily::sigmoid,
      BaselineFamily::exponential, BaselineFamily::polynomial};
  double poly_coeff_lo = -0.1, poly_coeff_hi = 0.1;
  bool renormalize_after_baseline = false;
  std::uint64_t seed = 42;

  void validate() const;
};

// Full provenance of one augmentation draw; enough to regenerate or invert
// the transform.
struct AugmentRecord {
  double scale = 1.0;
  double shift = 0.0;
  BaselineSpec baseline;
  std::uint64_t substream_id = 0;
};

// Draws a baseline family uniformly among the enabled ones, then its
// parameters uniformly from their intervals. Deterministic given rng state.
BaselineSpec sample_baseline(const AugmentConfig& cfg, Rng& rng);

// Draws scale, shift and baseline (in that order) without touching any
// spectrum. augment_spectrum(s, cfg, rng) == apply_augment(s,
// draw_augment_record(cfg, rng)).
AugmentRecord draw_augment_record(const AugmentConfig& cfg, Rng& rng);

// Applies a recorded augmentation: scale, shift, normalize, add baseline.
Spectrum apply_augment(const Spectrum& s, const AugmentRecord& rec,
                       bool renormalize_after_baseline = false);

// Augmentation pipeline, applied in this order:
//   1. multiply by scale              (drawn from scale range)
//   2. add shift                      (drawn from shift range)
//   3. min-max normalize
//   4. add a sampled random baseline
// Returns the augmented spectrum plus the provenance record. The input must
// be non-constant (normalization requirement).
struct AugmentResult {
  Spectrum spectrum;
  AugmentRecord record;
};

AugmentResult augment_spectrum(const Spectrum& s, const AugmentConfig& cfg,
                               Rng& rng);

// Convenience: augments with the per-item substream rng
// (Rng::substream(cfg.seed, stream_id)); records the stream id.
AugmentResult augment_spectrum_stream(const Spectrum& s,
                                      const AugmentConfig& cfg,
                                      std::uint64_t stream_id);

// Undoes an augmentation using its provenance: subtracts the baseline.
// The result equals normalize_minmax(scale * s + shift) up to rounding.
Spectrum remove_baseline(const Spectrum& augmented, const AugmentRecord& rec);

}  // namespace ramix
