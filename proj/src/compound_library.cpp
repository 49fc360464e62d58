#include "ramix/compound_library.hpp"

#include <cmath>
#include <set>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"

namespace ramix {

CompoundLibrary::CompoundLibrary(std::vector<std::string> names,
                                 std::vector<Spectrum> spectra)
    : names_(std::move(names)), spectra_(std::move(spectra)) {
  if (names_.empty() || names_.size() != spectra_.size()) {
    throw data_error("CompoundLibrary: need one name per spectrum");
  }
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) {
    throw data_error("CompoundLibrary: duplicate compound names");
  }
  const WavenumberGrid& g = spectra_.front().grid();
  for (const Spectrum& s : spectra_) {
    if (s.grid() != g) {
      throw data_error("CompoundLibrary: spectra on different grids");
    }
    const double peak = kernels::min_max(s.data(), s.size()).second;
    if (std::fabs(peak - 1.0) > 1e-9) {
      throw data_error("CompoundLibrary: spectra must be max-normalized to 1");
    }
  }
}

const std::vector<std::string>& canonical_compound_names() {
  static const std::vector<std::string> names = {"aniline", "o-xylene",
                                                 "pyridine", "toluene"};
  return names;
}

const std::vector<std::vector<PeakModel>>& builtin_peak_tables() {
  using PS = PeakShape;
  static const std::vector<std::vector<PeakModel>> tables = {
      // aniline
      {
          {998.0, 6.0, 1.00, PS::lorentzian},
          {526.0, 7.0, 0.45, PS::lorentzian},
          {818.0, 8.0, 0.55, PS::lorentzian},
          {1174.0, 6.0, 0.35, PS::lorentzian},
          {1601.0, 7.0, 0.50, PS::lorentzian},
          {1280.0, 16.0, 0.20, PS::gaussian},
      },
      // o-xylene
      {
          {1002.0, 6.0, 0.85, PS::lorentzian},
          {585.0, 7.0, 0.40, PS::lorentzian},
          {735.0, 6.0, 1.00, PS::lorentzian},
          {1221.0, 7.0, 0.45, PS::lorentzian},
          {1495.0, 8.0, 0.30, PS::lorentzian},
      },
      // pyridine: two dominant sharp lines close together
      {
          {992.0, 5.0, 1.00, PS::lorentzian},
          {1031.0, 5.0, 0.85, PS::lorentzian},
          {652.0, 7.0, 0.30, PS::lorentzian},
          {1217.0, 8.0, 0.25, PS::lorentzian},
          {1482.0, 9.0, 0.20, PS::lorentzian},
      },
      // toluene: its 1030 line overlaps pyridine's
      {
          {1004.0, 6.0, 1.00, PS::lorentzian},
          {521.0, 7.0, 0.50, PS::lorentzian},
          {786.0, 7.0, 0.65, PS::lorentzian},
          {1030.0, 6.0, 0.35, PS::lorentzian},
          {1211.0, 8.0, 0.30, PS::lorentzian},
          {1605.0, 7.0, 0.40, PS::lorentzian},
      },
  };
  return tables;
}

CompoundLibrary builtin_library(const WavenumberGrid& grid) {
  std::vector<Spectrum> spectra;
  spectra.reserve(builtin_peak_tables().size());
  for (const auto& peaks : builtin_peak_tables()) {
    spectra.push_back(synth_pure_spectrum(peaks, grid));
  }
  return CompoundLibrary(canonical_compound_names(), std::move(spectra));
}

}  // namespace ramix
