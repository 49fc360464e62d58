#include "ramix/json_conv.hpp"

#include <algorithm>

#include "ramix/errors.hpp"

namespace ramix {

using nlohmann::json;

void reject_unknown_keys(const json& j,
                         std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) {
    throw config_error(where + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) {
      throw config_error(where + ": unknown key '" + key + "'");
    }
  }
}

json model_config_to_json(const ModelConfig& cfg) {
  json blocks = json::array();
  for (const auto& blk : cfg.conv_blocks) {
    blocks.push_back({blk.filters, blk.kernel});
  }
  return json{{"variant", model_variant_name(cfg.variant)},
              {"conv_blocks", blocks},
              {"pool_window", cfg.pool_window},
              {"dense_sizes", cfg.dense_sizes},
              {"num_classes", cfg.num_classes},
              {"input_points", cfg.input_points}};
}

ModelConfig model_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"variant", "conv_blocks", "pool_window", "dense_sizes",
                       "num_classes", "input_points"},
                      "model");
  ModelConfig cfg;
  if (j.contains("variant")) {
    cfg.variant = model_variant_from_name(j.at("variant").get<std::string>());
  }
  if (j.contains("conv_blocks")) {
    cfg.conv_blocks.clear();
    for (const auto& blk : j.at("conv_blocks")) {
      if (!blk.is_array() || blk.size() != 2) {
        throw config_error("model: conv_blocks entries must be [filters, kernel]");
      }
      cfg.conv_blocks.push_back(
          {blk[0].get<std::size_t>(), blk[1].get<std::size_t>()});
    }
  }
  if (j.contains("pool_window")) cfg.pool_window = j.at("pool_window").get<std::size_t>();
  if (j.contains("dense_sizes")) {
    cfg.dense_sizes = j.at("dense_sizes").get<std::vector<std::size_t>>();
  }
  if (j.contains("num_classes")) cfg.num_classes = j.at("num_classes").get<std::size_t>();
  if (j.contains("input_points")) cfg.input_points = j.at("input_points").get<std::size_t>();
  cfg.validate();
  return cfg;
}

json baseline_spec_to_json(const BaselineSpec& spec) {
  json j{{"family", baseline_family_name(spec.family)}};
  switch (spec.family) {
    case BaselineFamily::gaussian:
      j["mu"] = spec.mu_cm1;
      j["sigma2"] = spec.sigma2;
      j["amplitude"] = spec.amplitude;
      break;
    case BaselineFamily::sigmoid:
      j["slope"] = spec.slope;
      j["centre"] = spec.centre_cm1;
      j["amplitude"] = spec.amplitude;
      break;
    case BaselineFamily::exponential:
      j["slope"] = spec.slope;
      j["amplitude"] = spec.amplitude;
      break;
    case BaselineFamily::polynomial:
      j["coefficients"] = spec.coefficients;
      break;
  }
  return j;
}

BaselineSpec baseline_spec_from_json(const json& j) {
  BaselineSpec spec;
  spec.family = baseline_family_from_name(j.at("family").get<std::string>());
  switch (spec.family) {
    case BaselineFamily::gaussian:
      spec.mu_cm1 = j.at("mu").get<double>();
      spec.sigma2 = j.at("sigma2").get<double>();
      spec.amplitude = j.at("amplitude").get<double>();
      break;
    case BaselineFamily::sigmoid:
      spec.slope = j.at("slope").get<double>();
      spec.centre_cm1 = j.at("centre").get<double>();
      spec.amplitude = j.at("amplitude").get<double>();
      break;
    case BaselineFamily::exponential:
      spec.slope = j.at("slope").get<double>();
      spec.amplitude = j.at("amplitude").get<double>();
      break;
    case BaselineFamily::polynomial:
      spec.coefficients = j.at("coefficients").get<std::vector<double>>();
      break;
  }
  spec.validate();
  return spec;
}

json augment_record_to_json(const AugmentRecord& rec) {
  return json{{"scale", rec.scale},
              {"shift", rec.shift},
              {"baseline", baseline_spec_to_json(rec.baseline)},
              {"substream", rec.substream_id}};
}

AugmentRecord augment_record_from_json(const json& j) {
  AugmentRecord rec;
  rec.scale = j.at("scale").get<double>();
  rec.shift = j.at("shift").get<double>();
  rec.baseline = baseline_spec_from_json(j.at("baseline"));
  rec.substream_id = j.at("substream").get<std::uint64_t>();
  return rec;
}

json augment_config_to_json(const AugmentConfig& cfg) {
  json families = json::array();
  for (BaselineFamily f : cfg.families_enabled) {
    families.push_back(baseline_family_name(f));
  }
  return json{{"shift_range", {cfg.shift_lo, cfg.shift_hi}},
              {"scale_range", {cfg.scale_lo, cfg.scale_hi}},
              {"baseline_families", families},
              {"poly_coeff_range", {cfg.poly_coeff_lo, cfg.poly_coeff_hi}},
              {"renormalize_after_baseline", cfg.renormalize_after_baseline},
              {"seed", cfg.seed}};
}

AugmentConfig augment_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"shift_range", "scale_range", "baseline_families",
                       "poly_coeff_range", "renormalize_after_baseline", "seed"},
                      "augment");
  AugmentConfig cfg;
  auto range = [&](const char* key, double* lo, double* hi) {
    if (!j.contains(key)) return;
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 2) {
      throw config_error(std::string("augment: ") + key + " must be [lo, hi]");
    }
    *lo = r[0].get<double>();
    *hi = r[1].get<double>();
  };
  range("shift_range", &cfg.shift_lo, &cfg.shift_hi);
  range("scale_range", &cfg.scale_lo, &cfg.scale_hi);
  range("poly_coeff_range", &cfg.poly_coeff_lo, &cfg.poly_coeff_hi);
  if (j.contains("baseline_families")) {
    cfg.families_enabled.clear();
    for (const auto& name : j.at("baseline_families")) {
      cfg.families_enabled.insert(
          baseline_family_from_name(name.get<std::string>()));
    }
  }
  if (j.contains("renormalize_after_baseline")) {
    cfg.renormalize_after_baseline = j.at("renormalize_after_baseline").get<bool>();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

}  // namespace ramix
