#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramix/adam.hpp"
#include "ramix/layers.hpp"
#include "ramix/spectrum.hpp"
#include "ramix/tensor.hpp"

namespace ramix {

enum class ModelVariant : std::uint8_t { ramixnet1 = 1, ramixnet2 = 2 };

const char* model_variant_name(ModelVariant v);
ModelVariant model_variant_from_name(const std::string& name);

// Architecture hyper-parameters. ramixnet1 is
//   [conv(M,N) -> ReLU -> maxpool]* -> flatten -> [dense(D) -> ReLU]* ->
//   dense(C) -> sigmoid
// and ramixnet2 shares the conv encoder and runs two such dense heads in
// parallel, one for component presence and one for component ratios.
struct ModelConfig {
  struct ConvBlock {
    std::size_t filters;
    std::size_t kernel;
    bool operator==(const ConvBlock&) const = default;
  };

  ModelVariant variant = ModelVariant::ramixnet1;
  std::vector<ConvBlock> conv_blocks = {{16, 9}, {32, 9}, {64, 9}};
  std::size_t pool_window = 2;
  std::vector<std::size_t> dense_sizes = {256};
  std::size_t num_classes = 4;
  std::size_t input_points = 2201;

  void validate() const;
  bool operator==(const ModelConfig& other) const = default;
};

// One qualitative + quantitative readout for a spectrum.
struct Prediction {
  std::vector<double> class_probs;       // sigmoid outputs, length C
  std::vector<int> presence;             // class_probs >= threshold
  std::vector<double> ratios;            // ramixnet2 only, length C (else empty)
};

// Converts predicted ratios to dispensed volumes; ratio 1.0 corresponds to
// full_scale_ul microliters. Ratios must lie in [0, 1].
std::vector<double> ratios_to_volume(const std::vector<double>& ratios,
                                     double full_scale_ul = 200.0);

class RaMixNet {
 public:
  // Builds the network and initializes weights from `init_seed`
  // (He-uniform into ReLU layers, Glorot-uniform into the sigmoid outputs,
  // zero biases).
  RaMixNet(ModelConfig cfg, std::uint64_t init_seed);
  RaMixNet(RaMixNet&&) noexcept;
  RaMixNet& operator=(RaMixNet&&) noexcept;
  ~RaMixNet();

  const ModelConfig& config() const { return cfg_; }
  std::size_t param_count() const;

  // Parameter blocks in declared layer order (encoder, then classification
  // head, then regression head). This order defines the checkpoint layout.
  std::vector<nn::ParamBlock> params();

  struct Output {
    nn::Tensor cls_logits;            // (B, C)
    nn::Tensor reg_logits;            // (B, C); empty for ramixnet1
  };

  // Forward pass over a batch (B, 1, input_points); caches activations for
  // a following backward(). Training is single-writer: one forward/backward
  // pair at a time per instance.
  Output forward(const nn::Tensor& x);

  // Inference-only forward (no caching); safe for concurrent callers on a
  // const instance.
  Output infer(const nn::Tensor& x) const;

  // Backpropagates loss gradients w.r.t. the head logits, accumulating
  // parameter gradients. dreg may be empty for ramixnet1 or when the
  // regression loss is disabled.
  void backward(const nn::Tensor& dcls, const nn::Tensor& dreg);

  void zero_grads();

  // Copies encoder + classification-head weights from another model with an
  // identical encoder/head geometry (used to compare the two variants on
  // equal footing).
  void copy_shared_weights_from(RaMixNet& other);

 private:
  struct Cache;

  nn::Tensor encode(const nn::Tensor& x, Cache* cache) const;
  nn::Tensor run_head(const std::vector<nn::Dense>& head, const nn::Tensor& flat,
                      std::vector<nn::Tensor>* saved) const;

  ModelConfig cfg_;
  std::vector<nn::Conv1D> convs_;
  std::vector<nn::Dense> cls_head_;     // dense_sizes.. then C
  std::vector<nn::Dense> reg_head_;     // ramixnet2 only
  std::size_t flat_features_ = 0;
  std::unique_ptr<Cache> cache_;
};

// Forward + sigmoid + thresholding on one spectrum (must be on the grid the
// model was built for).
Prediction predict(const RaMixNet& model, const Spectrum& s,
                   double threshold = 0.5);

// Expected parameter count from the configuration alone (closed form).
std::size_t expected_param_count(const ModelConfig& cfg);

}  // namespace ramix
