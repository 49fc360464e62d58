#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ramix/spectrum.hpp"

namespace ramix {

// Static overlay plot of one or more spectra sharing a grid. Output is pure
// SVG text, byte-deterministic for fixed input.
struct PlotSpec {
  std::vector<Spectrum> series;
  std::vector<std::string> labels;  // one per series
  std::filesystem::path output;
  std::size_t width = 960;
  std::size_t height = 480;

  void validate() const;
};

std::string render_plot_svg(const PlotSpec& spec);
void write_plot_svg(const PlotSpec& spec);

}  // namespace ramix
