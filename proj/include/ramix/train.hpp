#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramix/label.hpp"
#include "ramix/model.hpp"

namespace ramix {

enum class MseWeightMode : std::uint8_t { uniform, presence_emphasis };

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch_size = 16;
  double learning_rate = 1e-3;
  // Weight of the regression loss in the ramixnet2 objective
  // (total = bce + lambda_reg * weighted_mse).
  double lambda_reg = 1.0;
  double validation_fraction = 0.1;
  std::uint64_t seed = 42;
  std::size_t patience = 20;  // early stop after this many non-improving epochs
  MseWeightMode mse_weight_mode = MseWeightMode::uniform;
  // presence_emphasis: weight for absent components (present ones get 1).
  double absent_weight = 0.25;

  void validate() const;
};

// A labeled training example on the model's input grid.
struct TrainItem {
  MixtureLabel label;
  std::vector<double> intensities;
};

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double train_bce = 0.0;
  double train_mse = 0.0;  // 0 for ramixnet1
  double val_loss = 0.0;
  double val_bce = 0.0;
  double val_mse = 0.0;
  double val_bit_accuracy = 0.0;  // fraction of presence bits correct at 0.5
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;   // 1-based epoch with lowest validation loss
  double best_val_loss = 0.0;
  bool stopped_early = false;
};

// Mini-batch Adam training. Items are shuffled each epoch with the seeded
// generator; the model is left holding the weights of the best validation
// epoch. Fully deterministic given (config, data, model init). Throws
// numeric_error if the loss turns non-finite and data_error for an empty
// training set or item/model length mismatch.
TrainHistory train(RaMixNet& model, const std::vector<TrainItem>& train_items,
                   const std::vector<TrainItem>& val_items,
                   const TrainConfig& cfg);

// Deterministic split of item indices into train/validation index sets.
// Grouping key: items sharing the same group id always land on one side
// (used to keep augmented copies of one mixture together).
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
};
SplitIndices split_train_val(const std::vector<std::uint64_t>& group_ids,
                             double validation_fraction, std::uint64_t seed);

}  // namespace ramix
