#pragma once

#include <filesystem>
#include <string>

#include "ramix/spectrum.hpp"

namespace ramix {

// Spectrum CSV format: UTF-8, header "wavenumber_cm1,intensity", one row per
// grid point in ascending wavenumber order, '.' decimal separator. Numbers
// are written in shortest round-trip form, so writes are byte-deterministic
// and read-back is lossless.

std::string spectrum_to_csv(const Spectrum& s);

// Writes atomically (temp file + rename).
void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path);

// Parses a spectrum CSV. The rows must form a uniformly spaced ascending
// grid; parse failures raise data_error naming the offending line.
Spectrum parse_spectrum_csv(const std::string& text, const std::string& origin);
Spectrum read_spectrum_csv(const std::filesystem::path& path);

// Reads a CSV on any uniform grid and resamples it onto `grid`; the file's
// range must cover the requested grid.
Spectrum read_spectrum_csv_resampled(const std::filesystem::path& path,
                                     const WavenumberGrid& grid);

// Shortest round-trip decimal form of a double, locale-independent.
std::string format_double(double v);

// Atomic text-file write helper (temp + rename) used by all file emitters.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace ramix
