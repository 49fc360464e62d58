#include "ramix/mixtures.hpp"

#include <cmath>
#include <limits>

#include "ramix/errors.hpp"

namespace ramix {

void MixtureGenConfig::validate() const {
  if (levels_t < 2) {
    throw config_error("mixture_gen: levels_t must be >= 2");
  }
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw config_error("mixture_gen: t^C overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

}  // namespace

MixtureEnumeration::MixtureEnumeration(const CompoundLibrary& lib,
                                       MixtureGenConfig cfg)
    : lib_(&lib), cfg_(cfg) {
  cfg_.validate();
  count_ = checked_pow(cfg_.levels_t, lib.size()) - 1;
}

std::vector<std::uint64_t> MixtureEnumeration::levels_at(
    std::uint64_t index) const {
  if (index >= count_) {
    throw std::out_of_range("MixtureEnumeration: index out of range");
  }
  // Tuple = digits of (index + 1) base t, compound 0 most significant;
  // value 0 (the all-zero tuple) is skipped.
  std::uint64_t v = index + 1;
  const std::size_t c = lib_->size();
  std::vector<std::uint64_t> levels(c);
  for (std::size_t j = c; j-- > 0;) {
    levels[j] = v % cfg_.levels_t;
    v /= cfg_.levels_t;
  }
  return levels;
}

std::vector<double> MixtureEnumeration::ratios_at(std::uint64_t index) const {
  const auto levels = levels_at(index);
  const double denom = cfg_.include_full_scale
                           ? static_cast<double>(cfg_.levels_t - 1)
                           : static_cast<double>(cfg_.levels_t);
  std::vector<double> ratios(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    ratios[i] = static_cast<double>(levels[i]) / denom;
  }
  return ratios;
}

MixtureLabel MixtureEnumeration::label_at(std::uint64_t index) const {
  return make_label(ratios_at(index));
}

Spectrum MixtureEnumeration::spectrum_at(std::uint64_t index) const {
  return linear_combine(lib_->spectra(), ratios_at(index));
}

const std::vector<std::pair<std::string, std::vector<double>>>&
standard_test_compositions() {
  // Canonical compound order: aniline, o-xylene, pyridine, toluene.
  static const std::vector<std::pair<std::string, std::vector<double>>> rows = {
      {"S1", {0.0, 1.0, 0.0, 1.0}},  // o-xylene + toluene
      {"S2", {1.0, 0.0, 1.0, 0.0}},  // aniline + pyridine
      {"S3", {1.0, 1.0, 0.0, 0.0}},  // aniline + o-xylene
      {"S4", {0.0, 1.0, 1.0, 0.0}},  // o-xylene + pyridine
      {"S5", {0.0, 1.0, 1.0, 1.0}},  // o-xylene + pyridine + toluene
      {"S6", {1.0, 0.0, 0.0, 1.0}},  // aniline + toluene
  };
  return rows;
}

std::uint64_t held_out_stream_id(std::uint64_t k) {
  return 0x8000000000000000ULL | k;
}

std::vector<TestMixture> standard_test_set(const CompoundLibrary& lib,
                                           const AugmentConfig& aug) {
  const auto& canonical = canonical_compound_names();
  if (lib.size() != canonical.size()) {
    throw data_error("standard_test_set: library must hold exactly " +
                     std::to_string(canonical.size()) + " compounds");
  }
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    if (lib.names()[i] != canonical[i]) {
      throw data_error("standard_test_set: compound " + std::to_string(i) +
                       " must be '" + canonical[i] + "', got '" +
                       lib.names()[i] + "'");
    }
  }

  std::vector<TestMixture> out;
  out.reserve(standard_test_compositions().size());
  std::uint64_t k = 0;
  for (const auto& [name, ratios] : standard_test_compositions()) {
    Spectrum mixed = linear_combine(lib.spectra(), ratios);
    AugmentResult res =
        augment_spectrum_stream(mixed, aug, held_out_stream_id(k++));
    out.push_back(TestMixture{name, make_label(ratios), std::move(res.spectrum),
                              res.record});
  }
  return out;
}

}  // namespace ramix
