#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ramix {

// Uniformly spaced wavenumber axis. point(i) = start + i * spacing with
// spacing = (end - start) / (n_points - 1), so both endpoints are grid
// points. The canonical acquisition grid spans 300..2500 cm^-1 at 1 cm^-1
// spacing (2201 points).
class WavenumberGrid {
 public:
  WavenumberGrid(double start_cm1, double end_cm1, std::size_t n_points)
      : start_(start_cm1), end_(end_cm1), n_points_(n_points) {
    if (!(start_cm1 < end_cm1)) {
      throw std::invalid_argument("WavenumberGrid: start must be < end");
    }
    if (n_points < 2) {
      throw std::invalid_argument("WavenumberGrid: need at least 2 points");
    }
  }

  static WavenumberGrid canonical() { return WavenumberGrid(300.0, 2500.0, 2201); }

  double start_cm1() const { return start_; }
  double end_cm1() const { return end_; }
  std::size_t n_points() const { return n_points_; }
  double spacing() const {
    return (end_ - start_) / static_cast<double>(n_points_ - 1);
  }

  // i-th grid point; exact at both endpoints.
  double point(std::size_t i) const {
    if (i >= n_points_) {
      throw std::out_of_range("WavenumberGrid::point: index " +
                              std::to_string(i) + " out of range");
    }
    if (i == n_points_ - 1) return end_;
    return start_ + static_cast<double>(i) * spacing();
  }

  // Maps a wavenumber onto [-2.5, 2.5]; both endpoints land exactly.
  // Used by the polynomial baseline family.
  double to_unit_band(double x_cm1) const {
    const double t = (x_cm1 - start_) / (end_ - start_);
    return 5.0 * t - 2.5;
  }

  bool operator==(const WavenumberGrid& other) const {
    return start_ == other.start_ && end_ == other.end_ &&
           n_points_ == other.n_points_;
  }
  bool operator!=(const WavenumberGrid& other) const { return !(*this == other); }

 private:
  double start_;
  double end_;
  std::size_t n_points_;
};

}  // namespace ramix
