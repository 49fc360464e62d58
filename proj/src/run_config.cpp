#include "ramix/run_config.hpp"

#include <fstream>

#include "ramix/errors.hpp"
#include "ramix/json_conv.hpp"

namespace ramix {

using nlohmann::json;

std::filesystem::path RunConfig::library_path() const {
  if (!paths.library.empty()) return paths.library;
  return std::filesystem::path(paths.out_dir) / "library.json";
}

std::filesystem::path RunConfig::dataset_path() const {
  if (!paths.dataset.empty()) return paths.dataset;
  return std::filesystem::path(paths.out_dir) / "dataset.rmx";
}

std::filesystem::path RunConfig::checkpoint_path() const {
  if (!paths.checkpoint.empty()) return paths.checkpoint;
  return std::filesystem::path(paths.out_dir) / "checkpoint.rmxc";
}

std::filesystem::path RunConfig::test_set_path() const {
  if (!paths.test_set.empty()) return paths.test_set;
  return std::filesystem::path(paths.out_dir) / "test_standard.json";
}

DatasetGenConfig RunConfig::dataset_gen_config() const {
  DatasetGenConfig cfg;
  cfg.mixture = mixture_gen;
  cfg.augment = augment;
  cfg.augment_enabled = augment_enabled;
  cfg.augment_reps = augment_reps;
  cfg.clean_copy = clean_copy;
  return cfg;
}

void RunConfig::propagate_seed() {
  augment.seed = seed;
  train.seed = seed;
}

void RunConfig::validate() const {
  mixture_gen.validate();
  augment.validate();
  model.validate();
  train.validate();
  if (!(eval.threshold >= 0.0 && eval.threshold <= 1.0)) {
    throw config_error("eval: threshold must be in [0, 1]");
  }
  if (!(eval.full_scale_ul > 0.0)) {
    throw config_error("eval: full_scale_ul must be > 0");
  }
  if (!compounds.builtin) {
    if (compounds.names.empty() ||
        compounds.names.size() != compounds.peaks.size()) {
      throw config_error("compounds: custom library needs one peak table per name");
    }
  }
  if (augment_enabled && augment_reps == 0 && !clean_copy) {
    throw config_error("augment: enabled but zero copies per mixture");
  }
}

namespace {

PeakShape peak_shape_from_name(const std::string& name) {
  if (name == "lorentzian") return PeakShape::lorentzian;
  if (name == "gaussian") return PeakShape::gaussian;
  throw config_error("compounds: unknown peak shape '" + name + "'");
}

const char* peak_shape_name(PeakShape s) {
  return s == PeakShape::lorentzian ? "lorentzian" : "gaussian";
}

void parse_grid(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"start_cm1", "end_cm1", "n_points"}, "grid");
  double start = cfg.grid.start_cm1();
  double end = cfg.grid.end_cm1();
  std::size_t n = cfg.grid.n_points();
  if (j.contains("start_cm1")) start = j.at("start_cm1").get<double>();
  if (j.contains("end_cm1")) end = j.at("end_cm1").get<double>();
  if (j.contains("n_points")) n = j.at("n_points").get<std::size_t>();
  cfg.grid = WavenumberGrid(start, end, n);
}

void parse_compounds(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"builtin", "names", "peaks"}, "compounds");
  if (j.contains("builtin")) cfg.compounds.builtin = j.at("builtin").get<bool>();
  if (j.contains("names")) {
    cfg.compounds.names = j.at("names").get<std::vector<std::string>>();
  }
  if (j.contains("peaks")) {
    cfg.compounds.peaks.clear();
    for (const auto& table : j.at("peaks")) {
      std::vector<PeakModel> peaks;
      for (const auto& p : table) {
        if (!p.is_array() || p.size() != 4) {
          throw config_error(
              "compounds: each peak is [center, half_width, amplitude, shape]");
        }
        peaks.push_back(PeakModel{p[0].get<double>(), p[1].get<double>(),
                                  p[2].get<double>(),
                                  peak_shape_from_name(p[3].get<std::string>())});
      }
      cfg.compounds.peaks.push_back(std::move(peaks));
    }
  }
}

void parse_mixture_gen(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"levels_t", "include_full_scale"}, "mixture_gen");
  if (j.contains("levels_t")) {
    cfg.mixture_gen.levels_t = j.at("levels_t").get<std::uint64_t>();
  }
  if (j.contains("include_full_scale")) {
    cfg.mixture_gen.include_full_scale = j.at("include_full_scale").get<bool>();
  }
}

void parse_augment(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j,
                      {"shift_range", "scale_range", "baseline_families",
                       "poly_coeff_range", "renormalize_after_baseline",
                       "enabled", "reps", "clean_copy"},
                      "augment");
  auto range = [&](const char* key, double* lo, double* hi) {
    if (!j.contains(key)) return;
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 2) {
      throw config_error(std::string("augment: ") + key + " must be [lo, hi]");
    }
    *lo = r[0].get<double>();
    *hi = r[1].get<double>();
  };
  range("shift_range", &cfg.augment.shift_lo, &cfg.augment.shift_hi);
  range("scale_range", &cfg.augment.scale_lo, &cfg.augment.scale_hi);
  range("poly_coeff_range", &cfg.augment.poly_coeff_lo, &cfg.augment.poly_coeff_hi);
  if (j.contains("baseline_families")) {
    cfg.augment.families_enabled.clear();
    for (const auto& name : j.at("baseline_families")) {
      cfg.augment.families_enabled.insert(
          baseline_family_from_name(name.get<std::string>()));
    }
  }
  if (j.contains("renormalize_after_baseline")) {
    cfg.augment.renormalize_after_baseline =
        j.at("renormalize_after_baseline").get<bool>();
  }
  if (j.contains("enabled")) cfg.augment_enabled = j.at("enabled").get<bool>();
  if (j.contains("reps")) cfg.augment_reps = j.at("reps").get<std::size_t>();
  if (j.contains("clean_copy")) cfg.clean_copy = j.at("clean_copy").get<bool>();
}

void parse_train(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j,
                      {"epochs", "batch_size", "learning_rate", "lambda_reg",
                       "validation_fraction", "patience", "mse_weight_mode",
                       "absent_weight"},
                      "train");
  TrainConfig& t = cfg.train;
  if (j.contains("epochs")) t.epochs = j.at("epochs").get<std::size_t>();
  if (j.contains("batch_size")) t.batch_size = j.at("batch_size").get<std::size_t>();
  if (j.contains("learning_rate")) t.learning_rate = j.at("learning_rate").get<double>();
  if (j.contains("lambda_reg")) t.lambda_reg = j.at("lambda_reg").get<double>();
  if (j.contains("validation_fraction")) {
    t.validation_fraction = j.at("validation_fraction").get<double>();
  }
  if (j.contains("patience")) t.patience = j.at("patience").get<std::size_t>();
  if (j.contains("mse_weight_mode")) {
    const auto mode = j.at("mse_weight_mode").get<std::string>();
    if (mode == "uniform") {
      t.mse_weight_mode = MseWeightMode::uniform;
    } else if (mode == "presence_emphasis") {
      t.mse_weight_mode = MseWeightMode::presence_emphasis;
    } else {
      throw config_error("train: unknown mse_weight_mode '" + mode + "'");
    }
  }
  if (j.contains("absent_weight")) t.absent_weight = j.at("absent_weight").get<double>();
}

void parse_eval(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"threshold", "full_scale_ul"}, "eval");
  if (j.contains("threshold")) cfg.eval.threshold = j.at("threshold").get<double>();
  if (j.contains("full_scale_ul")) {
    cfg.eval.full_scale_ul = j.at("full_scale_ul").get<double>();
  }
}

void parse_paths(const json& j, RunConfig& cfg) {
  reject_unknown_keys(j, {"out_dir", "library", "dataset", "checkpoint", "test_set"},
                      "paths");
  if (j.contains("out_dir")) cfg.paths.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("library")) cfg.paths.library = j.at("library").get<std::string>();
  if (j.contains("dataset")) cfg.paths.dataset = j.at("dataset").get<std::string>();
  if (j.contains("checkpoint")) {
    cfg.paths.checkpoint = j.at("checkpoint").get<std::string>();
  }
  if (j.contains("test_set")) cfg.paths.test_set = j.at("test_set").get<std::string>();
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"grid", "compounds", "mixture_gen", "augment", "model",
                       "train", "eval", "paths", "seed"},
                      "config");
  RunConfig cfg;
  if (j.contains("grid")) parse_grid(j.at("grid"), cfg);
  if (j.contains("compounds")) parse_compounds(j.at("compounds"), cfg);
  if (j.contains("mixture_gen")) parse_mixture_gen(j.at("mixture_gen"), cfg);
  if (j.contains("augment")) parse_augment(j.at("augment"), cfg);
  if (j.contains("model")) cfg.model = model_config_from_json(j.at("model"));
  if (j.contains("train")) parse_train(j.at("train"), cfg);
  if (j.contains("eval")) parse_eval(j.at("eval"), cfg);
  if (j.contains("paths")) parse_paths(j.at("paths"), cfg);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.propagate_seed();
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("config: cannot open " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error("config: " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

json run_config_to_json(const RunConfig& cfg) {
  json compounds{{"builtin", cfg.compounds.builtin}};
  if (!cfg.compounds.builtin) {
    compounds["names"] = cfg.compounds.names;
    json tables = json::array();
    for (const auto& table : cfg.compounds.peaks) {
      json peaks = json::array();
      for (const auto& p : table) {
        peaks.push_back({p.center_cm1, p.half_width_cm1, p.amplitude,
                         peak_shape_name(p.shape)});
      }
      tables.push_back(std::move(peaks));
    }
    compounds["peaks"] = std::move(tables);
  }

  json families = json::array();
  for (BaselineFamily f : cfg.augment.families_enabled) {
    families.push_back(baseline_family_name(f));
  }

  return json{
      {"grid",
       {{"start_cm1", cfg.grid.start_cm1()},
        {"end_cm1", cfg.grid.end_cm1()},
        {"n_points", cfg.grid.n_points()}}},
      {"compounds", compounds},
      {"mixture_gen",
       {{"levels_t", cfg.mixture_gen.levels_t},
        {"include_full_scale", cfg.mixture_gen.include_full_scale}}},
      {"augment",
       {{"shift_range", {cfg.augment.shift_lo, cfg.augment.shift_hi}},
        {"scale_range", {cfg.augment.scale_lo, cfg.augment.scale_hi}},
        {"baseline_families", families},
        {"poly_coeff_range", {cfg.augment.poly_coeff_lo, cfg.augment.poly_coeff_hi}},
        {"renormalize_after_baseline", cfg.augment.renormalize_after_baseline},
        {"enabled", cfg.augment_enabled},
        {"reps", cfg.augment_reps},
        {"clean_copy", cfg.clean_copy}}},
      {"model", model_config_to_json(cfg.model)},
      {"train",
       {{"epochs", cfg.train.epochs},
        {"batch_size", cfg.train.batch_size},
        {"learning_rate", cfg.train.learning_rate},
        {"lambda_reg", cfg.train.lambda_reg},
        {"validation_fraction", cfg.train.validation_fraction},
        {"patience", cfg.train.patience},
        {"mse_weight_mode",
         cfg.train.mse_weight_mode == MseWeightMode::uniform
             ? "uniform"
             : "presence_emphasis"},
        {"absent_weight", cfg.train.absent_weight}}},
      {"eval",
       {{"threshold", cfg.eval.threshold},
        {"full_scale_ul", cfg.eval.full_scale_ul}}},
      {"paths",
       {{"out_dir", cfg.paths.out_dir},
        {"library", cfg.paths.library},
        {"dataset", cfg.paths.dataset},
        {"checkpoint", cfg.paths.checkpoint},
        {"test_set", cfg.paths.test_set}}},
      {"seed", cfg.seed}};
}

}  // namespace ramix
