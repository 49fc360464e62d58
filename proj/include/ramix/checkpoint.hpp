#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ramix/model.hpp"

namespace ramix {

// Training provenance stored next to the weights.
struct CheckpointMeta {
  std::uint64_t seed = 0;
  std::uint64_t epochs_run = 0;
  double final_train_loss = 0.0;
  double final_val_loss = 0.0;
};

// Checkpoint file layout (little-endian):
//   "RMXC" magic, u8 version,
//   u32 JSON length, JSON (model config + metadata),
//   f64 parameter blob in declared layer order,
//   u64 FNV-1a checksum of the blob bytes.
// Loading restores a model whose outputs are bitwise identical to the saved
// one on any input.
inline constexpr std::uint8_t kCheckpointVersion = 1;

void save_checkpoint(RaMixNet& model, const CheckpointMeta& meta,
                     const std::filesystem::path& path);

struct LoadedCheckpoint {
  RaMixNet model;
  CheckpointMeta meta;
};

// Throws data_error on bad magic/version, truncation, checksum or parameter
// count mismatch. If expect_variant is set, a checkpoint of any other
// variant is rejected.
LoadedCheckpoint load_checkpoint(
    const std::filesystem::path& path,
    std::optional<ModelVariant> expect_variant = std::nullopt);

// Header-only inspection (config, metadata, parameter count, checksum).
struct CheckpointInfo {
  ModelConfig config;
  CheckpointMeta meta;
  std::uint64_t param_count = 0;
  std::uint64_t checksum = 0;
};
CheckpointInfo inspect_checkpoint(const std::filesystem::path& path);

// FNV-1a 64-bit hash, also used by tests to fingerprint byte streams.
std::uint64_t fnv1a64(const void* data, std::size_t size);

}  // namespace ramix
