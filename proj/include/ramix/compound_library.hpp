#pragma once

#include <string>
#include <vector>

#include "ramix/peaks.hpp"
#include "ramix/spectrum.hpp"

namespace ramix {

// Basis set for mixture synthesis: named pure-compound spectra on one grid,
// each max-normalized to 1.
class CompoundLibrary {
 public:
  CompoundLibrary(std::vector<std::string> names, std::vector<Spectrum> spectra);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Spectrum>& spectra() const { return spectra_; }
  const Spectrum& spectrum(std::size_t i) const { return spectra_.at(i); }
  const WavenumberGrid& grid() const { return spectra_.front().grid(); }

 private:
  std::vector<std::string> names_;
  std::vector<Spectrum> spectra_;
};

// Canonical compound order used by the standard test set.
const std::vector<std::string>& canonical_compound_names();

// Fixed peak tables for the four built-in compounds. All four share a ring
// mode near 1000 cm^-1 and differ in their remaining lines, so the pure
// spectra are similar but separable. Order matches
// canonical_compound_names().
const std::vector<std::vector<PeakModel>>& builtin_peak_tables();

// Library synthesized from builtin_peak_tables() on the given grid.
CompoundLibrary builtin_library(const WavenumberGrid& grid);

}  // namespace ramix
