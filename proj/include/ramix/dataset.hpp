#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ramix/augment.hpp"
#include "ramix/compound_library.hpp"
#include "ramix/label.hpp"
#include "ramix/mixtures.hpp"
#include "ramix/train.hpp"

namespace ramix {

// How one dataset item's spectrum was produced from its base mixture:
//   raw:       plain linear combination (augmentation disabled)
//   clean:     min-max normalized, no baseline
//   augmented: full pipeline with the recorded draw
struct ItemProvenance {
  enum class Kind : std::uint8_t { raw, clean, augmented };
  Kind kind = Kind::raw;
  std::optional<AugmentRecord> record;  // set iff kind == augmented
};

struct DatasetItemRecord {
  std::uint64_t base_index = 0;  // index into the mixture enumeration
  MixtureLabel label;
  ItemProvenance provenance;
};

// Generation policy: per enumerated mixture, zero or one clean copy plus
// `augment_reps` independently augmented copies. With augmentation disabled
// the raw mixture is emitted once.
struct DatasetGenConfig {
  MixtureGenConfig mixture;
  AugmentConfig augment;
  bool augment_enabled = true;
  std::size_t augment_reps = 2;
  bool clean_copy = true;

  std::size_t copies_per_mixture() const {
    return augment_enabled ? augment_reps + (clean_copy ? 1 : 0) : 1;
  }
};

struct DatasetMeta {
  std::vector<std::string> compounds;
  std::uint64_t levels_t = 10;
  bool include_full_scale = true;
  std::uint64_t seed = 42;
  WavenumberGrid grid = WavenumberGrid::canonical();
  AugmentConfig augment;
  bool augment_enabled = true;
  std::size_t augment_reps = 2;
  bool clean_copy = true;
  std::uint64_t item_count = 0;
};

struct Dataset {
  DatasetMeta meta;
  std::vector<DatasetItemRecord> records;
  std::vector<std::vector<double>> spectra;  // one row per record

  std::vector<TrainItem> to_train_items() const;
  std::vector<TrainItem> to_train_items(const std::vector<std::size_t>& idx) const;
  std::vector<std::uint64_t> group_ids() const;  // base_index per item
};

// Deterministic in-memory generation. Item i of mixture v has stream id
// (v * copies + copy_index); an augmented copy consumes exactly its own
// substream, so items can be produced in any order or partition.
Dataset build_dataset(const CompoundLibrary& lib, const DatasetGenConfig& cfg);

// The provenance record (label + draw) of one item, without its spectrum.
DatasetItemRecord dataset_item_record(const MixtureEnumeration& en,
                                      const DatasetGenConfig& cfg,
                                      std::uint64_t base_index,
                                      std::size_t copy_index);

// Rebuilds one item's spectrum from its provenance.
std::vector<double> dataset_item_spectrum(const MixtureEnumeration& en,
                                          const DatasetGenConfig& cfg,
                                          const DatasetItemRecord& rec);

// JSON manifest: metadata + per-item records with inline spectrum arrays.
void write_dataset_json(const Dataset& ds, const std::filesystem::path& path);

// Packed single-file form: "RMX1" magic, u8 version, u32 header-JSON length,
// header JSON (same content as the manifest minus spectra), then one
// little-endian f32 row of n_points samples per item.
inline constexpr std::uint8_t kPackedDatasetVersion = 1;
void write_dataset_packed(const Dataset& ds, const std::filesystem::path& path);

// Streaming packed generation: computes records first, then writes spectra
// row by row (bounded memory regardless of item count).
void generate_dataset_packed(const CompoundLibrary& lib,
                             const DatasetGenConfig& cfg,
                             const std::filesystem::path& path);

// Reads either format (detected by magic).
Dataset read_dataset(const std::filesystem::path& path);

}  // namespace ramix
