#include "ramix/spectrum_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ramix/errors.hpp"

namespace ramix {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw data_error("write: cannot open " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw data_error("write: short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw data_error("write: rename to " + path.string() + " failed: " +
                     ec.message());
  }
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "wavenumber_cm1,intensity\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_double(s.grid().point(i));
    out += ',';
    out += format_double(s[i]);
    out += '\n';
  }
  return out;
}

void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path) {
  write_text_atomic(path, spectrum_to_csv(s));
}

namespace {

double parse_number(std::string_view sv, const std::string& origin,
                    std::size_t line_no) {
  double value = 0.0;
  const char* first = sv.data();
  const char* last = sv.data() + sv.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw data_error(origin + ":" + std::to_string(line_no) +
                     ": cannot parse number '" + std::string(sv) + "'");
  }
  return value;
}

std::string_view trim(std::string_view sv) {
  while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ')) {
    sv.remove_suffix(1);
  }
  while (!sv.empty() && sv.front() == ' ') {
    sv.remove_prefix(1);
  }
  return sv;
}

}  // namespace

Spectrum parse_spectrum_csv(const std::string& text, const std::string& origin) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string_view line = trim(std::string_view(text).substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "wavenumber_cm1,intensity") {
        throw data_error(origin + ":1: expected header 'wavenumber_cm1,intensity'");
      }
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw data_error(origin + ":" + std::to_string(line_no) +
                       ": expected 'wavenumber,intensity'");
    }
    xs.push_back(parse_number(trim(line.substr(0, comma)), origin, line_no));
    ys.push_back(parse_number(trim(line.substr(comma + 1)), origin, line_no));
  }
  if (xs.size() < 2) {
    throw data_error(origin + ": needs at least 2 data rows");
  }

  const double start = xs.front();
  const double end = xs.back();
  if (!(start < end)) {
    throw data_error(origin + ": wavenumbers must be ascending");
  }
  const double spacing = (end - start) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double step = xs[i] - xs[i - 1];
    if (!(step > 0.0) || std::fabs(step - spacing) > 1e-6 * spacing) {
      throw data_error(origin + ":" + std::to_string(i + 2) +
                       ": grid is not uniformly ascending");
    }
  }
  return Spectrum(WavenumberGrid(start, end, xs.size()), std::move(ys));
}

Spectrum read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw data_error("read: cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectrum_csv(buf.str(), path.filename().string());
}

Spectrum read_spectrum_csv_resampled(const std::filesystem::path& path,
                                     const WavenumberGrid& grid) {
  return resample(read_spectrum_csv(path), grid);
}

}  // namespace ramix
