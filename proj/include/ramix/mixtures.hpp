#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramix/augment.hpp"
#include "ramix/compound_library.hpp"
#include "ramix/label.hpp"
#include "ramix/spectrum.hpp"

namespace ramix {

// Per-compound intensity quantization. With t levels, each compound takes
// level k in {0 .. t-1}; ratio = k/(t-1) when include_full_scale (levels
// reach 1.0), else k/t. Every nonzero level tuple yields one mixture, so the
// total count is t^C - 1.
struct MixtureGenConfig {
  std::uint64_t levels_t = 10;
  bool include_full_scale = true;

  void validate() const;
};

// Deterministic, ordered enumeration of all nonzero level tuples. Tuples are
// ordered lexicographically with compound 0 as the most significant digit.
// Items are addressable by index, so the stream can be partitioned across
// workers without changing results.
class MixtureEnumeration {
 public:
  MixtureEnumeration(const CompoundLibrary& lib, MixtureGenConfig cfg);

  std::uint64_t count() const { return count_; }

  // Levels tuple of item `index` (index in [0, count)).
  std::vector<std::uint64_t> levels_at(std::uint64_t index) const;
  std::vector<double> ratios_at(std::uint64_t index) const;
  MixtureLabel label_at(std::uint64_t index) const;
  // linear_combine of the pure spectra with ratios_at(index); not normalized.
  Spectrum spectrum_at(std::uint64_t index) const;

 private:
  const CompoundLibrary* lib_;
  MixtureGenConfig cfg_;
  std::uint64_t count_;
};

// One held-out evaluation mixture, analogous to a prepared cuvette sample.
struct TestMixture {
  std::string name;
  MixtureLabel label;
  Spectrum spectrum;       // baseline-corrupted, what the model sees
  AugmentRecord provenance;
};

// The six standard evaluation mixtures S1..S6 (equal-part combinations of
// the four canonical compounds, every present component at ratio 1.0). Each
// spectrum is combined from the pure library entries and then passed through
// the augmentation pipeline with a held-out random stream, so its baseline
// never appears in training data generated from the same seed.
// Requires the four canonical compounds in canonical order.
std::vector<TestMixture> standard_test_set(const CompoundLibrary& lib,
                                           const AugmentConfig& aug);

// Ratio rows of S1..S6 in canonical compound order.
const std::vector<std::pair<std::string, std::vector<double>>>&
standard_test_compositions();

// Stream ids reserved for held-out evaluation draws; never used for
// training items (training streams are plain item indices).
std::uint64_t held_out_stream_id(std::uint64_t k);

}  // namespace ramix
