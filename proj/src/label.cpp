#include "ramix/label.hpp"

#include <cmath>
#include <string>

#include "ramix/errors.hpp"

namespace ramix {

namespace {

void check_ratio_range(const std::vector<double>& ratios) {
  for (double r : ratios) {
    if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
      throw data_error("MixtureLabel: ratio " + std::to_string(r) +
                       " outside [0, 1]");
    }
  }
}

}  // namespace

MixtureLabel::MixtureLabel(std::vector<double> ratios)
    : ratios_(std::move(ratios)) {
  check_ratio_range(ratios_);
  presence_.resize(ratios_.size());
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    presence_[i] = ratios_[i] > 0.0 ? 1 : 0;
  }
}

MixtureLabel::MixtureLabel(std::vector<int> presence, std::vector<double> ratios)
    : presence_(std::move(presence)), ratios_(std::move(ratios)) {
  if (presence_.size() != ratios_.size()) {
    throw data_error("MixtureLabel: presence and ratio lengths differ");
  }
  check_ratio_range(ratios_);
  for (std::size_t i = 0; i < ratios_.size(); ++i) {
    if (presence_[i] != 0 && presence_[i] != 1) {
      throw data_error("MixtureLabel: presence bits must be 0 or 1");
    }
    if (presence_[i] != (ratios_[i] > 0.0 ? 1 : 0)) {
      throw data_error("MixtureLabel: presence bit " + std::to_string(i) +
                       " inconsistent with ratio " + std::to_string(ratios_[i]));
    }
  }
}

std::vector<double> MixtureLabel::serialize() const {
  std::vector<double> flat;
  flat.reserve(2 * ratios_.size());
  for (int p : presence_) flat.push_back(static_cast<double>(p));
  for (double r : ratios_) flat.push_back(r);
  return flat;
}

MixtureLabel MixtureLabel::deserialize(const std::vector<double>& flat) {
  if (flat.size() % 2 != 0 || flat.empty()) {
    throw data_error("MixtureLabel: serialized length must be 2C");
  }
  const std::size_t c = flat.size() / 2;
  std::vector<int> presence(c);
  std::vector<double> ratios(flat.begin() + static_cast<std::ptrdiff_t>(c),
                             flat.end());
  for (std::size_t i = 0; i < c; ++i) {
    if (flat[i] != 0.0 && flat[i] != 1.0) {
      throw data_error("MixtureLabel: presence entry must be 0 or 1");
    }
    presence[i] = flat[i] == 1.0 ? 1 : 0;
  }
  return MixtureLabel(std::move(presence), std::move(ratios));
}

MixtureLabel make_label(const std::vector<double>& ratios) {
  return MixtureLabel(ratios);
}

}  // namespace ramix
