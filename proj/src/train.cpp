#include "ramix/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ramix/errors.hpp"
#include "ramix/losses.hpp"
#include "ramix/rng.hpp"

namespace ramix {

using nn::Tensor;

void TrainConfig::validate() const {
  if (epochs == 0) throw config_error("train: epochs must be >= 1");
  if (batch_size == 0) throw config_error("train: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw config_error("train: learning rate must be > 0");
  if (!(lambda_reg >= 0.0)) throw config_error("train: lambda_reg must be >= 0");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw config_error("train: validation_fraction must be in (0, 1)");
  }
  if (!(absent_weight >= 0.0)) throw config_error("train: absent_weight must be >= 0");
}

namespace {

struct BatchLoss {
  double total = 0.0;
  double bce = 0.0;
  double mse = 0.0;
};

Tensor batch_inputs(const std::vector<TrainItem>& items,
                    const std::vector<std::size_t>& order, std::size_t begin,
                    std::size_t end, std::size_t input_points) {
  Tensor x = Tensor::zeros3(end - begin, 1, input_points);
  for (std::size_t i = begin; i < end; ++i) {
    const auto& item = items[order[i]];
    if (item.intensities.size() != input_points) {
      throw data_error("train: item length does not match model input");
    }
    std::copy(item.intensities.begin(), item.intensities.end(),
              x.row3(i - begin, 0));
  }
  return x;
}

void batch_targets(const std::vector<TrainItem>& items,
                   const std::vector<std::size_t>& order, std::size_t begin,
                   std::size_t end, std::size_t num_classes, Tensor* presence,
                   Tensor* ratios) {
  *presence = Tensor::zeros2(end - begin, num_classes);
  *ratios = Tensor::zeros2(end - begin, num_classes);
  for (std::size_t i = begin; i < end; ++i) {
    const MixtureLabel& label = items[order[i]].label;
    if (label.num_components() != num_classes) {
      throw data_error("train: label size does not match model classes");
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
      presence->at2(i - begin, c) = static_cast<double>(label.presence()[c]);
      ratios->at2(i - begin, c) = label.ratios()[c];
    }
  }
}

Tensor mse_weights(const Tensor& presence, const TrainConfig& cfg) {
  Tensor w = presence;
  if (cfg.mse_weight_mode == MseWeightMode::uniform) {
    std::fill(w.data(), w.data() + w.size(), 1.0);
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      w.data()[i] = presence.data()[i] > 0.0 ? 1.0 : cfg.absent_weight;
    }
  }
  return w;
}

// Forward + losses; fills gradient tensors when training.
BatchLoss evaluate_batch(RaMixNet& model, const Tensor& x,
                         const Tensor& presence, const Tensor& ratios,
                         const TrainConfig& cfg, bool backprop,
                         std::size_t* correct_bits) {
  const bool dual = model.config().variant == ModelVariant::ramixnet2;
  RaMixNet::Output out = backprop ? model.forward(x)
                                  : const_cast<const RaMixNet&>(model).infer(x);

  nn::LossResult bce = nn::bce_with_logits(out.cls_logits, presence);
  BatchLoss loss;
  loss.bce = bce.value;
  loss.total = bce.value;

  Tensor dreg;
  if (dual && cfg.lambda_reg > 0.0) {
    Tensor pred = nn::sigmoid_forward(out.reg_logits);
    Tensor w = mse_weights(presence, cfg);
    nn::LossResult mse = nn::weighted_mse(pred, ratios, w);
    loss.mse = mse.value;
    loss.total += cfg.lambda_reg * mse.value;
    if (backprop) {
      // Chain through the sigmoid: dL/dz = dL/dp * p (1 - p), scaled by lambda.
      dreg = mse.grad;
      for (std::size_t i = 0; i < dreg.size(); ++i) {
        const double p = pred.data()[i];
        dreg.data()[i] *= cfg.lambda_reg * p * (1.0 - p);
      }
    }
  }

  if (correct_bits) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < out.cls_logits.size(); ++i) {
      const int predicted = out.cls_logits.data()[i] >= 0.0 ? 1 : 0;
      const int truth = presence.data()[i] > 0.0 ? 1 : 0;
      correct += predicted == truth ? 1 : 0;
    }
    *correct_bits += correct;
  }

  if (backprop) {
    model.backward(bce.grad, dreg);
  }
  return loss;
}

}  // namespace

SplitIndices split_train_val(const std::vector<std::uint64_t>& group_ids,
                             double validation_fraction, std::uint64_t seed) {
  std::vector<std::uint64_t> groups = group_ids;
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  if (groups.size() < 2) {
    throw data_error("split: need at least 2 distinct groups");
  }

  // Fisher-Yates over the distinct groups.
  Rng rng = Rng::substream(seed, 0x51D0'5EEDULL);
  for (std::size_t i = groups.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_below(i);
    std::swap(groups[i - 1], groups[j]);
  }
  std::size_t n_val = static_cast<std::size_t>(
      std::llround(validation_fraction * static_cast<double>(groups.size())));
  n_val = std::clamp<std::size_t>(n_val, 1, groups.size() - 1);

  std::vector<std::uint64_t> val_groups(groups.begin(),
                                        groups.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::sort(val_groups.begin(), val_groups.end());

  SplitIndices split;
  for (std::size_t i = 0; i < group_ids.size(); ++i) {
    const bool in_val = std::binary_search(val_groups.begin(), val_groups.end(),
                                           group_ids[i]);
    (in_val ? split.val : split.train).push_back(i);
  }
  return split;
}

TrainHistory train(RaMixNet& model, const std::vector<TrainItem>& train_items,
                   const std::vector<TrainItem>& val_items,
                   const TrainConfig& cfg) {
  cfg.validate();
  if (train_items.empty()) throw data_error("train: empty training set");
  if (val_items.empty()) throw data_error("train: empty validation set");

  const std::size_t input_points = model.config().input_points;
  const std::size_t num_classes = model.config().num_classes;

  auto blocks = model.params();
  nn::Adam optimizer(blocks, {cfg.learning_rate, 0.9, 0.999, 1e-8});

  Rng shuffle_rng = Rng::substream(cfg.seed, 0x5405'F1E5ULL);

  std::vector<std::size_t> order(train_items.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> val_order(val_items.size());
  std::iota(val_order.begin(), val_order.end(), 0);

  TrainHistory history;
  std::vector<double> best_params;
  double best_val = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    // Seeded per-epoch shuffle.
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::size_t j = shuffle_rng.uniform_below(i);
      std::swap(order[i - 1], order[j]);
    }

    BatchLoss train_acc;
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(begin + cfg.batch_size, order.size());
      Tensor x = batch_inputs(train_items, order, begin, end, input_points);
      Tensor presence, ratios;
      batch_targets(train_items, order, begin, end, num_classes, &presence,
                    &ratios);

      model.zero_grads();
      const BatchLoss loss = evaluate_batch(model, x, presence, ratios, cfg,
                                            /*backprop=*/true, nullptr);
      if (!std::isfinite(loss.total)) {
        throw numeric_error("train: non-finite loss at epoch " +
                            std::to_string(epoch));
      }
      optimizer.step(blocks);
      train_acc.total += loss.total;
      train_acc.bce += loss.bce;
      train_acc.mse += loss.mse;
      ++batches;
    }

    BatchLoss val_acc;
    std::size_t val_batches = 0;
    std::size_t correct_bits = 0;
    for (std::size_t begin = 0; begin < val_order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(begin + cfg.batch_size, val_order.size());
      Tensor x = batch_inputs(val_items, val_order, begin, end, input_points);
      Tensor presence, ratios;
      batch_targets(val_items, val_order, begin, end, num_classes, &presence,
                    &ratios);
      const BatchLoss loss = evaluate_batch(model, x, presence, ratios, cfg,
                                            /*backprop=*/false, &correct_bits);
      val_acc.total += loss.total;
      val_acc.bce += loss.bce;
      val_acc.mse += loss.mse;
      ++val_batches;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = train_acc.total / static_cast<double>(batches);
    stats.train_bce = train_acc.bce / static_cast<double>(batches);
    stats.train_mse = train_acc.mse / static_cast<double>(batches);
    stats.val_loss = val_acc.total / static_cast<double>(val_batches);
    stats.val_bce = val_acc.bce / static_cast<double>(val_batches);
    stats.val_mse = val_acc.mse / static_cast<double>(val_batches);
    stats.val_bit_accuracy =
        static_cast<double>(correct_bits) /
        static_cast<double>(val_items.size() * num_classes);
    history.epochs.push_back(stats);

    if (stats.val_loss < best_val) {
      best_val = stats.val_loss;
      history.best_epoch = epoch;
      since_best = 0;
      best_params.clear();
      for (const auto& blk : blocks) {
        best_params.insert(best_params.end(), blk.values, blk.values + blk.count);
      }
    } else if (++since_best >= cfg.patience) {
      history.stopped_early = true;
      break;
    }
  }

  history.best_val_loss = best_val;
  // Restore the best-validation weights.
  std::size_t offset = 0;
  for (const auto& blk : blocks) {
    std::copy(best_params.begin() + static_cast<std::ptrdiff_t>(offset),
              best_params.begin() + static_cast<std::ptrdiff_t>(offset + blk.count),
              blk.values);
    offset += blk.count;
  }
  return history;
}

}  // namespace ramix
