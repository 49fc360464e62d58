#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramix/dataset.hpp"
#include "ramix/model.hpp"
#include "ramix/peaks.hpp"
#include "ramix/train.hpp"

namespace ramix {

// One JSON document drives every pipeline stage. All fields have defaults;
// unknown keys anywhere are rejected. A single master seed pins dataset
// augmentation, weight initialization and training shuffles.
struct RunConfig {
  WavenumberGrid grid = WavenumberGrid::canonical();

  struct Compounds {
    bool builtin = true;  // the four checked-in stand-ins
    std::vector<std::string> names;                // custom library
    std::vector<std::vector<PeakModel>> peaks;     // one table per name
  } compounds;

  MixtureGenConfig mixture_gen;

  AugmentConfig augment;          // seed overwritten by the master seed
  bool augment_enabled = true;
  std::size_t augment_reps = 2;
  bool clean_copy = true;

  ModelConfig model;
  TrainConfig train;              // seed overwritten by the master seed

  struct Eval {
    double threshold = 0.5;
    double full_scale_ul = 200.0;
  } eval;

  struct Paths {
    std::string out_dir = "out";
    // Empty string means "derive from out_dir".
    std::string library;
    std::string dataset;
    std::string checkpoint;
    std::string test_set;
  } paths;

  std::uint64_t seed = 42;

  // Derived path helpers.
  std::filesystem::path library_path() const;
  std::filesystem::path dataset_path() const;
  std::filesystem::path checkpoint_path() const;
  std::filesystem::path test_set_path() const;

  DatasetGenConfig dataset_gen_config() const;

  // Applies the master seed to the dependent sections.
  void propagate_seed();
  void validate() const;
};

// Parses and validates a config document; throws config_error on schema
// violations (including unknown keys).
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json run_config_to_json(const RunConfig& cfg);

}  // namespace ramix
