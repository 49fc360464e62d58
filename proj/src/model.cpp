#include "ramix/model.hpp"

#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/rng.hpp"

namespace ramix {

using nn::Tensor;

const char* model_variant_name(ModelVariant v) {
  return v == ModelVariant::ramixnet1 ? "ramixnet1" : "ramixnet2";
}

ModelVariant model_variant_from_name(const std::string& name) {
  if (name == "ramixnet1") return ModelVariant::ramixnet1;
  if (name == "ramixnet2") return ModelVariant::ramixnet2;
  throw config_error("model: unknown variant '" + name + "'");
}

void ModelConfig::validate() const {
  if (conv_blocks.empty()) {
    throw config_error("model: need at least one conv block");
  }
  for (const ConvBlock& blk : conv_blocks) {
    if (blk.filters == 0) throw config_error("model: conv filters must be > 0");
    if (blk.kernel == 0 || blk.kernel % 2 == 0) {
      throw config_error("model: conv kernel size must be odd");
    }
  }
  if (pool_window < 1) throw config_error("model: pool window must be >= 1");
  for (std::size_t d : dense_sizes) {
    if (d == 0) throw config_error("model: dense size must be > 0");
  }
  if (num_classes == 0) throw config_error("model: num_classes must be >= 1");
  if (input_points < 2) throw config_error("model: input_points must be >= 2");
}

std::vector<double> ratios_to_volume(const std::vector<double>& ratios,
                                     double full_scale_ul) {
  std::vector<double> volumes(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] >= 0.0 && ratios[i] <= 1.0)) {
      throw data_error("ratios_to_volume: ratio outside [0, 1]");
    }
    volumes[i] = ratios[i] * full_scale_ul;
  }
  return volumes;
}

namespace {

std::size_t pooled_length(std::size_t len, std::size_t window) {
  return (len + window - 1) / window;
}

}  // namespace

std::size_t expected_param_count(const ModelConfig& cfg) {
  cfg.validate();
  std::size_t total = 0;
  std::size_t channels = 1;
  std::size_t len = cfg.input_points;
  for (const auto& blk : cfg.conv_blocks) {
    total += blk.filters * channels * blk.kernel + blk.filters;
    channels = blk.filters;
    len = pooled_length(len, cfg.pool_window);
  }
  const std::size_t flat = channels * len;
  auto head = [&] {
    std::size_t ht = 0;
    std::size_t in = flat;
    for (std::size_t d : cfg.dense_sizes) {
      ht += d * in + d;
      in = d;
    }
    ht += cfg.num_classes * in + cfg.num_classes;
    return ht;
  };
  total += head();
  if (cfg.variant == ModelVariant::ramixnet2) total += head();
  return total;
}

struct RaMixNet::Cache {
  // Per conv block: input, pre-activation, relu output, pool bookkeeping.
  std::vector<Tensor> conv_in;
  std::vector<Tensor> conv_pre;
  std::vector<nn::MaxPoolResult> pools;
  std::vector<std::size_t> pre_pool_len;
  Tensor flat;
  // Per head: inputs to each dense layer interleaved with pre-activations.
  std::vector<Tensor> cls_saved;
  std::vector<Tensor> reg_saved;
};

RaMixNet::RaMixNet(RaMixNet&&) noexcept = default;
RaMixNet& RaMixNet::operator=(RaMixNet&&) noexcept = default;
RaMixNet::~RaMixNet() = default;

RaMixNet::RaMixNet(ModelConfig cfg, std::uint64_t init_seed)
    : cfg_(std::move(cfg)), cache_(std::make_unique<Cache>()) {
  cfg_.validate();

  std::size_t channels = 1;
  std::size_t len = cfg_.input_points;
  for (const auto& blk : cfg_.conv_blocks) {
    convs_.emplace_back(channels, blk.filters, blk.kernel);
    channels = blk.filters;
    len = pooled_length(len, cfg_.pool_window);
  }
  flat_features_ = channels * len;

  auto make_head = [&](std::vector<nn::Dense>& head) {
    std::size_t in = flat_features_;
    for (std::size_t d : cfg_.dense_sizes) {
      head.emplace_back(in, d);
      in = d;
    }
    head.emplace_back(in, cfg_.num_classes);
  };
  make_head(cls_head_);
  if (cfg_.variant == ModelVariant::ramixnet2) make_head(reg_head_);

  Rng rng(init_seed);
  for (auto& conv : convs_) conv.init(rng, nn::InitKind::he_uniform);
  auto init_head = [&](std::vector<nn::Dense>& head) {
    for (std::size_t i = 0; i + 1 < head.size(); ++i) {
      head[i].init(rng, nn::InitKind::he_uniform);
    }
    head.back().init(rng, nn::InitKind::glorot_uniform);
  };
  init_head(cls_head_);
  if (!reg_head_.empty()) init_head(reg_head_);
}

std::size_t RaMixNet::param_count() const {
  std::size_t total = 0;
  for (const auto& conv : convs_) total += conv.param_count();
  for (const auto& d : cls_head_) total += d.param_count();
  for (const auto& d : reg_head_) total += d.param_count();
  return total;
}

std::vector<nn::ParamBlock> RaMixNet::params() {
  std::vector<nn::ParamBlock> blocks;
  for (auto& conv : convs_) {
    for (auto blk : conv.params()) blocks.push_back(blk);
  }
  for (auto& d : cls_head_) {
    for (auto blk : d.params()) blocks.push_back(blk);
  }
  for (auto& d : reg_head_) {
    for (auto blk : d.params()) blocks.push_back(blk);
  }
  return blocks;
}

Tensor RaMixNet::encode(const Tensor& x, Cache* cache) const {
  if (x.rank() != 3 || x.channels() != 1 || x.length() != cfg_.input_points) {
    throw data_error("RaMixNet: input must be (batch, 1, " +
                     std::to_string(cfg_.input_points) + ")");
  }
  Tensor cur = x;
  if (cache) {
    cache->conv_in.clear();
    cache->conv_pre.clear();
    cache->pools.clear();
    cache->pre_pool_len.clear();
  }
  for (const auto& conv : convs_) {
    if (cache) cache->conv_in.push_back(cur);
    Tensor pre = conv.forward(cur);
    Tensor act = nn::relu_forward(pre);
    if (cache) {
      cache->conv_pre.push_back(std::move(pre));
      cache->pre_pool_len.push_back(act.length());
    }
    nn::MaxPoolResult pooled = nn::maxpool1d(act, cfg_.pool_window);
    cur = pooled.output;
    if (cache) cache->pools.push_back(std::move(pooled));
  }
  Tensor flat = cur.reshape2(cur.batch(), flat_features_);
  if (cache) cache->flat = flat;
  return flat;
}

Tensor RaMixNet::run_head(const std::vector<nn::Dense>& head, const Tensor& flat,
                          std::vector<Tensor>* saved) const {
  // saved (when caching) holds, per dense layer, its input; hidden layers
  // additionally store their pre-activation for the ReLU backward.
  Tensor cur = flat;
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (saved) saved->push_back(cur);
    Tensor pre = head[i].forward(cur);
    if (i + 1 < head.size()) {
      if (saved) saved->push_back(pre);
      cur = nn::relu_forward(pre);
    } else {
      cur = std::move(pre);  // logits; sigmoid applied by caller
    }
  }
  return cur;
}

RaMixNet::Output RaMixNet::forward(const Tensor& x) {
  Tensor flat = encode(x, cache_.get());
  cache_->cls_saved.clear();
  cache_->reg_saved.clear();
  Output out;
  out.cls_logits = run_head(cls_head_, flat, &cache_->cls_saved);
  if (!reg_head_.empty()) {
    out.reg_logits = run_head(reg_head_, flat, &cache_->reg_saved);
  }
  return out;
}

RaMixNet::Output RaMixNet::infer(const Tensor& x) const {
  Tensor flat = encode(x, nullptr);
  Output out;
  out.cls_logits = run_head(cls_head_, flat, nullptr);
  if (!reg_head_.empty()) {
    out.reg_logits = run_head(reg_head_, flat, nullptr);
  }
  return out;
}

void RaMixNet::backward(const Tensor& dcls, const Tensor& dreg) {
  auto head_backward = [&](std::vector<nn::Dense>& head,
                           const std::vector<Tensor>& saved,
                           const Tensor& dlogits) {
    Tensor cur = dlogits;
    for (std::size_t i = head.size(); i-- > 0;) {
      if (i + 1 < head.size()) {
        // saved layout per hidden layer i: [2i] input, [2i+1] pre-activation
        cur = nn::relu_backward_pass(saved[2 * i + 1], cur);
        cur = head[i].backward(saved[2 * i], cur);
      } else {
        cur = head[i].backward(saved[2 * i], cur);
      }
    }
    return cur;  // gradient w.r.t. the flat features
  };

  Tensor dflat = head_backward(cls_head_, cache_->cls_saved, dcls);
  if (!reg_head_.empty() && !dreg.empty()) {
    Tensor dflat_reg = head_backward(reg_head_, cache_->reg_saved, dreg);
    for (std::size_t i = 0; i < dflat.size(); ++i) {
      dflat.data()[i] += dflat_reg.data()[i];
    }
  }

  // Back through the conv encoder; (B, C*L) and (B, C, L) share layout.
  const std::size_t blocks = convs_.size();
  const Tensor& last_pool = cache_->pools.back().output;
  Tensor cur3 = Tensor::zeros3(last_pool.batch(), last_pool.channels(),
                               last_pool.length());
  std::copy(dflat.data(), dflat.data() + dflat.size(), cur3.data());

  for (std::size_t i = blocks; i-- > 0;) {
    Tensor dact =
        nn::maxpool1d_backward(cache_->pools[i], cur3, cache_->pre_pool_len[i]);
    Tensor dpre = nn::relu_backward_pass(cache_->conv_pre[i], dact);
    cur3 = convs_[i].backward(cache_->conv_in[i], dpre);
  }
}

void RaMixNet::zero_grads() {
  for (auto& conv : convs_) conv.zero_grads();
  for (auto& d : cls_head_) d.zero_grads();
  for (auto& d : reg_head_) d.zero_grads();
}

void RaMixNet::copy_shared_weights_from(RaMixNet& other) {
  if (convs_.size() != other.convs_.size() ||
      cls_head_.size() != other.cls_head_.size()) {
    throw data_error("RaMixNet: encoder geometries differ");
  }
  auto copy_blocks = [](std::vector<nn::ParamBlock> dst,
                        std::vector<nn::ParamBlock> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (dst[i].count != src[i].count) {
        throw data_error("RaMixNet: parameter block size mismatch");
      }
      std::copy(src[i].values, src[i].values + src[i].count, dst[i].values);
    }
  };
  for (std::size_t i = 0; i < convs_.size(); ++i) {
    copy_blocks(convs_[i].params(), other.convs_[i].params());
  }
  for (std::size_t i = 0; i < cls_head_.size(); ++i) {
    copy_blocks(cls_head_[i].params(), other.cls_head_[i].params());
  }
}

Prediction predict(const RaMixNet& model, const Spectrum& s, double threshold) {
  if (s.size() != model.config().input_points) {
    throw data_error("predict: spectrum length " + std::to_string(s.size()) +
                     " does not match model input " +
                     std::to_string(model.config().input_points));
  }
  Tensor x = Tensor::zeros3(1, 1, s.size());
  std::copy(s.data(), s.data() + s.size(), x.data());
  const RaMixNet::Output out = model.infer(x);

  Prediction pred;
  const std::size_t c = model.config().num_classes;
  pred.class_probs.resize(c);
  pred.presence.resize(c);
  for (std::size_t i = 0; i < c; ++i) {
    pred.class_probs[i] = nn::sigmoid_scalar(out.cls_logits.at2(0, i));
    pred.presence[i] = pred.class_probs[i] >= threshold ? 1 : 0;
  }
  if (!out.reg_logits.empty()) {
    pred.ratios.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
      pred.ratios[i] = nn::sigmoid_scalar(out.reg_logits.at2(0, i));
    }
  }
  return pred;
}

}  // namespace ramix
