#include "ramix/augment.hpp"

#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix {

void AugmentConfig::validate() const {
  if (!(shift_lo <= shift_hi)) {
    throw config_error("augment: empty shift range");
  }
  if (!(scale_lo <= scale_hi) || !(scale_lo > 0.0)) {
    throw config_error("augment: scale range must be positive and non-empty");
  }
  if (!(poly_coeff_lo <= poly_coeff_hi)) {
    throw config_error("augment: empty polynomial coefficient range");
  }
  if (families_enabled.empty()) {
    throw config_error("augment: no baseline family enabled");
  }
}

BaselineSpec sample_baseline(const AugmentConfig& cfg, Rng& rng) {
  cfg.validate();
  const BaselineRanges r;

  // Stable draw order: family index, then that family's parameters in the
  // order they are documented in BaselineSpec.
  std::vector<BaselineFamily> enabled(cfg.families_enabled.begin(),
                                      cfg.families_enabled.end());
  const BaselineFamily family =
      enabled[rng.uniform_below(enabled.size())];

  BaselineSpec spec;
  spec.family = family;
  switch (family) {
    case BaselineFamily::gaussian:
      spec.mu_cm1 = rng.uniform(r.gaussian_mu_lo, r.gaussian_mu_hi);
      spec.sigma2 = r.gaussian_sigma2;
      spec.amplitude = rng.uniform(r.gaussian_amp_lo, r.gaussian_amp_hi);
      break;
    case BaselineFamily::sigmoid:
      spec.slope = rng.uniform(r.sigmoid_slope_lo, r.sigmoid_slope_hi);
      spec.centre_cm1 = rng.uniform(r.sigmoid_centre_lo, r.sigmoid_centre_hi);
      spec.amplitude = rng.uniform(r.sigmoid_amp_lo, r.sigmoid_amp_hi);
      break;
    case BaselineFamily::exponential:
      spec.slope = rng.uniform(r.exponential_slope_lo, r.exponential_slope_hi);
      spec.amplitude = rng.uniform(r.exponential_amp_lo, r.exponential_amp_hi);
      break;
    case BaselineFamily::polynomial: {
      const int degree =
          r.polynomial_degree_lo +
          static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(
              r.polynomial_degree_hi - r.polynomial_degree_lo + 1)));
      spec.coefficients.resize(static_cast<std::size_t>(degree));
      // The degree-i coefficient range shrinks by 2.5^(i-1), so each term
      // contributes at most max|coeff| * 2.5 at the band edge and the whole
      // curve stays within 5 * 2.5 * 0.1 = 1.25 for the default range.
      double band_scale = 1.0;
      for (int i = 0; i < degree; ++i) {
        spec.coefficients[static_cast<std::size_t>(i)] =
            rng.uniform(cfg.poly_coeff_lo * band_scale,
                        cfg.poly_coeff_hi * band_scale);
        band_scale /= 2.5;
      }
      break;
    }
  }
  spec.validate();
  return spec;
}

AugmentRecord draw_augment_record(const AugmentConfig& cfg, Rng& rng) {
  cfg.validate();
  AugmentRecord rec;
  rec.scale = rng.uniform(cfg.scale_lo, cfg.scale_hi);
  rec.shift = rng.uniform(cfg.shift_lo, cfg.shift_hi);
  rec.baseline = sample_baseline(cfg, rng);
  return rec;
}

Spectrum apply_augment(const Spectrum& s, const AugmentRecord& rec,
                       bool renormalize_after_baseline) {
  std::vector<double> work(s.size());
  kernels::scale_shift(s.data(), rec.scale, rec.shift, work.data(), work.size());
  Spectrum normalized = normalize_minmax(Spectrum(s.grid(), std::move(work)));

  const Spectrum base = eval_baseline(rec.baseline, s.grid());
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = normalized[i] + base[i];
  }
  Spectrum augmented(s.grid(), std::move(out));
  if (renormalize_after_baseline) {
    augmented = normalize_minmax(augmented);
  }
  return augmented;
}

AugmentResult augment_spectrum(const Spectrum& s, const AugmentConfig& cfg,
                               Rng& rng) {
  AugmentRecord rec = draw_augment_record(cfg, rng);
  Spectrum augmented = apply_augment(s, rec, cfg.renormalize_after_baseline);
  return AugmentResult{std::move(augmented), rec};
}

AugmentResult augment_spectrum_stream(const Spectrum& s,
                                      const AugmentConfig& cfg,
                                      std::uint64_t stream_id) {
  Rng rng = Rng::substream(cfg.seed, stream_id);
  AugmentResult res = augment_spectrum(s, cfg, rng);
  res.record.substream_id = stream_id;
  return res;
}

Spectrum remove_baseline(const Spectrum& augmented, const AugmentRecord& rec) {
  const Spectrum base = eval_baseline(rec.baseline, augmented.grid());
  std::vector<double> out(augmented.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = augmented[i] - base[i];
  }
  return Spectrum(augmented.grid(), std::move(out));
}

}  // namespace ramix
