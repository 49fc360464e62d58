#pragma once

#include <cstddef>
#include <vector>

namespace ramix {

// Ground-truth label for a mixture of C compounds: one presence bit and one
// ratio in [0, 1] per compound. The coupling presence[i] == (ratios[i] > 0)
// is enforced at construction. Serialized form is [presence .. ratios],
// length 2C.
class MixtureLabel {
 public:
  // Derives presence bits from the ratios.
  explicit MixtureLabel(std::vector<double> ratios);

  // Validates an explicit presence/ratio pair.
  MixtureLabel(std::vector<int> presence, std::vector<double> ratios);

  std::size_t num_components() const { return ratios_.size(); }
  const std::vector<int>& presence() const { return presence_; }
  const std::vector<double>& ratios() const { return ratios_; }

  // [presence .. ratios], length 2C.
  std::vector<double> serialize() const;
  static MixtureLabel deserialize(const std::vector<double>& flat);

  bool operator==(const MixtureLabel& other) const {
    return presence_ == other.presence_ && ratios_ == other.ratios_;
  }

 private:
  std::vector<int> presence_;
  std::vector<double> ratios_;
};

// Builds a label from ratio values; throws data_error if any ratio is
// outside [0, 1].
MixtureLabel make_label(const std::vector<double>& ratios);

}  // namespace ramix
