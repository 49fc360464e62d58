#include "ramix/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/kernels.hpp"
#include "ramix/spectrum_io.hpp"

namespace ramix {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

// Fixed two-decimal formatting keeps coordinates compact and deterministic.
std::string coord(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace

void PlotSpec::validate() const {
  if (series.empty()) {
    throw data_error("plot: need at least one series");
  }
  if (labels.size() != series.size()) {
    throw data_error("plot: need one label per series");
  }
  for (const Spectrum& s : series) {
    if (s.grid() != series.front().grid()) {
      throw data_error("plot: all series must share one grid");
    }
  }
}

std::string render_plot_svg(const PlotSpec& spec) {
  spec.validate();
  const double margin_left = 64.0;
  const double margin_right = 16.0;
  const double margin_top = 16.0;
  const double margin_bottom = 48.0;
  const double w = static_cast<double>(spec.width);
  const double h = static_cast<double>(spec.height);
  const double plot_w = w - margin_left - margin_right;
  const double plot_h = h - margin_top - margin_bottom;

  double lo = 0.0;
  double hi = 1.0;
  bool first = true;
  for (const Spectrum& s : spec.series) {
    const auto [slo, shi] = kernels::min_max(s.data(), s.size());
    lo = first ? slo : std::min(lo, slo);
    hi = first ? shi : std::max(hi, shi);
    first = false;
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double pad = 0.04 * (hi - lo);
  lo -= pad;
  hi += pad;

  const WavenumberGrid& grid = spec.series.front().grid();
  const double x0 = grid.start_cm1();
  const double x1 = grid.end_cm1();
  auto sx = [&](double x) {
    return margin_left + (x - x0) / (x1 - x0) * plot_w;
  };
  auto sy = [&](double y) {
    return margin_top + (hi - y) / (hi - lo) * plot_h;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  svg += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
  svg += "<path d=\"M " + coord(margin_left) + " " + coord(margin_top) +
         " V " + coord(margin_top + plot_h) + " H " +
         coord(margin_left + plot_w) + "\"/>\n";
  svg += "</g>\n";

  // X ticks every 200 cm^-1 starting at the first multiple inside range.
  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  const double tick_step = 200.0;
  for (double x = std::ceil(x0 / tick_step) * tick_step; x <= x1;
       x += tick_step) {
    const double px = sx(x);
    svg += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(margin_top + plot_h) +
           "\" x2=\"" + coord(px) + "\" y2=\"" +
           coord(margin_top + plot_h + 4) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + coord(px) + "\" y=\"" +
           coord(margin_top + plot_h + 18) +
           "\" text-anchor=\"middle\">" + format_double(x) + "</text>\n";
  }
  // Y ticks at 5 even divisions.
  for (int i = 0; i <= 4; ++i) {
    const double y = lo + (hi - lo) * i / 4.0;
    const double py = sy(y);
    svg += "<line x1=\"" + coord(margin_left - 4) + "\" y1=\"" + coord(py) +
           "\" x2=\"" + coord(margin_left) + "\" y2=\"" + coord(py) +
           "\" stroke=\"#333\"/>\n";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), y,
                                   std::chars_format::fixed, 3);
    svg += "<text x=\"" + coord(margin_left - 8) + "\" y=\"" + coord(py + 4) +
           "\" text-anchor=\"end\">" + std::string(buf, res.ptr) + "</text>\n";
  }
  svg += "<text x=\"" + coord(margin_left + plot_w / 2) + "\" y=\"" +
         coord(h - 8) + "\" text-anchor=\"middle\">wavenumber (cm-1)</text>\n";
  svg += "</g>\n";

  // Series polylines.
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const Spectrum& s = spec.series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) svg += ' ';
      svg += coord(sx(s.grid().point(i)));
      svg += ',';
      svg += coord(sy(s[i]));
    }
    svg += "\"/>\n";
  }

  // Legend.
  svg += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < spec.labels.size(); ++k) {
    const double ly = margin_top + 16.0 + 16.0 * static_cast<double>(k);
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<line x1=\"" + coord(margin_left + 8) + "\" y1=\"" + coord(ly - 4) +
           "\" x2=\"" + coord(margin_left + 28) + "\" y2=\"" + coord(ly - 4) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(margin_left + 34) + "\" y=\"" + coord(ly) +
           "\">" + spec.labels[k] + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void write_plot_svg(const PlotSpec& spec) {
  write_text_atomic(spec.output, render_plot_svg(spec));
}

}  // namespace ramix
