#include "ramix/cli_commands.hpp"

#include <fstream>
#include <system_error>

#include "ramix/checkpoint.hpp"
#include "ramix/errors.hpp"
#include "ramix/json_conv.hpp"
#include "ramix/metrics.hpp"
#include "ramix/spectrum_io.hpp"
#include "ramix/svg_plot.hpp"

namespace ramix::cli {

using nlohmann::json;

namespace {

constexpr std::uint64_t kModelInitStream = 0x30D31ULL;

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw data_error("cannot create directory " + dir.string() + ": " +
                     ec.message());
  }
}

}  // namespace

CompoundLibrary build_library(const RunConfig& cfg) {
  if (cfg.compounds.builtin) {
    return builtin_library(cfg.grid);
  }
  std::vector<Spectrum> spectra;
  spectra.reserve(cfg.compounds.peaks.size());
  for (const auto& table : cfg.compounds.peaks) {
    spectra.push_back(synth_pure_spectrum(table, cfg.grid));
  }
  return CompoundLibrary(cfg.compounds.names, std::move(spectra));
}

CompoundLibrary load_library(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) {
    throw data_error("library: cannot open " + manifest_path.string() +
                     " (run synth-compounds first?)");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw data_error("library: " + manifest_path.string() + ": " + e.what());
  }
  if (!j.contains("format") || j.at("format").get<std::string>() != "ramix-library") {
    throw data_error("library: " + manifest_path.string() +
                     " is not a library manifest");
  }
  const auto& g = j.at("grid");
  const WavenumberGrid grid(g.at("start_cm1").get<double>(),
                            g.at("end_cm1").get<double>(),
                            g.at("n_points").get<std::size_t>());
  const auto names = j.at("names").get<std::vector<std::string>>();
  const auto files = j.at("files").get<std::vector<std::string>>();
  if (names.size() != files.size()) {
    throw data_error("library: names/files length mismatch");
  }
  const std::filesystem::path base = manifest_path.parent_path();
  std::vector<Spectrum> spectra;
  spectra.reserve(files.size());
  for (const auto& file : files) {
    spectra.push_back(read_spectrum_csv_resampled(base / file, grid));
  }
  return CompoundLibrary(names, std::move(spectra));
}

void cmd_synth_compounds(const RunConfig& cfg, std::ostream& log) {
  const CompoundLibrary lib = build_library(cfg);
  const std::filesystem::path out_dir = cfg.paths.out_dir;
  ensure_dir(out_dir / "compounds");

  std::vector<std::string> files;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    const std::string file = "compounds/" + lib.names()[i] + ".csv";
    write_spectrum_csv(lib.spectrum(i), out_dir / file);
    files.push_back(file);
  }
  const json manifest{{"format", "ramix-library"},
                      {"version", 1},
                      {"names", lib.names()},
                      {"files", files},
                      {"grid",
                       {{"start_cm1", lib.grid().start_cm1()},
                        {"end_cm1", lib.grid().end_cm1()},
                        {"n_points", lib.grid().n_points()}}},
                      {"seed", cfg.seed}};
  write_text_atomic(cfg.library_path(), manifest.dump(1) + "\n");
  log << "library: " << lib.size() << " compounds -> "
      << cfg.library_path().string() << "\n";
}

namespace {

// The standard test set serialized in the dataset manifest format so that
// cmd_evaluate can consume it directly.
void write_test_set(const RunConfig& cfg, const CompoundLibrary& lib,
                    const std::filesystem::path& path) {
  const std::vector<TestMixture> mixtures = standard_test_set(lib, cfg.augment);
  Dataset ds;
  ds.meta.compounds = lib.names();
  ds.meta.levels_t = cfg.mixture_gen.levels_t;
  ds.meta.include_full_scale = cfg.mixture_gen.include_full_scale;
  ds.meta.seed = cfg.seed;
  ds.meta.grid = lib.grid();
  ds.meta.augment = cfg.augment;
  ds.meta.augment_enabled = true;
  ds.meta.augment_reps = 1;
  ds.meta.clean_copy = false;
  ds.meta.item_count = mixtures.size();
  std::uint64_t k = 0;
  for (const TestMixture& m : mixtures) {
    DatasetItemRecord rec{k++, m.label, {}};
    rec.provenance.kind = ItemProvenance::Kind::augmented;
    rec.provenance.record = m.provenance;
    ds.records.push_back(std::move(rec));
    ds.spectra.push_back(m.spectrum.intensities());
  }
  write_dataset_json(ds, path);
}

}  // namespace

void cmd_gen_dataset(const RunConfig& cfg, const std::string& format,
                     std::ostream& log) {
  const CompoundLibrary lib = load_library(cfg.library_path());
  ensure_dir(cfg.paths.out_dir);
  const DatasetGenConfig gen = cfg.dataset_gen_config();

  std::filesystem::path path = cfg.dataset_path();
  if (format == "packed") {
    generate_dataset_packed(lib, gen, path);
  } else if (format == "json") {
    if (path.extension() == ".rmx") path.replace_extension(".json");
    write_dataset_json(build_dataset(lib, gen), path);
  } else {
    throw config_error("gen-dataset: unknown format '" + format +
                       "' (expected packed or json)");
  }
  const MixtureEnumeration en(lib, gen.mixture);
  const std::uint64_t items = en.count() * gen.copies_per_mixture();
  log << "dataset: " << items << " items (" << en.count() << " mixtures x "
      << gen.copies_per_mixture() << " copies) -> " << path.string() << "\n";

  if (lib.names() == canonical_compound_names()) {
    write_test_set(cfg, lib, cfg.test_set_path());
    log << "test set: 6 standard mixtures -> " << cfg.test_set_path().string()
        << "\n";
  }
}

namespace {

json history_to_json(const TrainHistory& history) {
  json epochs = json::array();
  for (const EpochStats& e : history.epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"train_bce", e.train_bce},
                      {"train_mse", e.train_mse},
                      {"val_loss", e.val_loss},
                      {"val_bce", e.val_bce},
                      {"val_mse", e.val_mse},
                      {"val_bit_accuracy", e.val_bit_accuracy}});
  }
  return json{{"epochs", std::move(epochs)},
              {"best_epoch", history.best_epoch},
              {"best_val_loss", history.best_val_loss},
              {"stopped_early", history.stopped_early}};
}

EvalReport evaluate_model(const RaMixNet& model, const Dataset& ds,
                          double threshold) {
  const bool dual = model.config().variant == ModelVariant::ramixnet2;
  std::vector<std::vector<int>> pred_presence;
  std::vector<std::vector<int>> gt_presence;
  std::vector<std::vector<double>> pred_ratios;
  std::vector<std::vector<double>> gt_ratios;
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const Spectrum s(ds.meta.grid, ds.spectra[i]);
    const Prediction pred = predict(model, s, threshold);
    pred_presence.push_back(pred.presence);
    gt_presence.push_back(ds.records[i].label.presence());
    if (dual) {
      pred_ratios.push_back(pred.ratios);
      gt_ratios.push_back(ds.records[i].label.ratios());
    }
  }
  return make_eval_report(ds.meta.compounds, pred_presence, gt_presence,
                          dual ? &pred_ratios : nullptr,
                          dual ? &gt_ratios : nullptr);
}

}  // namespace

void cmd_train(const RunConfig& cfg, std::ostream& log) {
  const Dataset ds = read_dataset(cfg.dataset_path());
  if (ds.records.empty()) {
    throw data_error("train: dataset is empty");
  }
  if (ds.meta.grid.n_points() != cfg.model.input_points) {
    throw data_error("train: dataset grid has " +
                     std::to_string(ds.meta.grid.n_points()) +
                     " points but the model expects " +
                     std::to_string(cfg.model.input_points));
  }
  ensure_dir(cfg.paths.out_dir);

  const SplitIndices split =
      split_train_val(ds.group_ids(), cfg.train.validation_fraction, cfg.seed);
  const std::vector<TrainItem> train_items = ds.to_train_items(split.train);
  const std::vector<TrainItem> val_items = ds.to_train_items(split.val);
  log << "train: " << train_items.size() << " items, validation "
      << val_items.size() << " items, variant "
      << model_variant_name(cfg.model.variant) << "\n";

  RaMixNet model(cfg.model, Rng::substream(cfg.seed, kModelInitStream).next_u64());
  const TrainHistory history = train(model, train_items, val_items, cfg.train);

  CheckpointMeta meta;
  meta.seed = cfg.seed;
  meta.epochs_run = history.epochs.size();
  meta.final_train_loss = history.epochs.back().train_loss;
  meta.final_val_loss = history.best_val_loss;
  save_checkpoint(model, meta, cfg.checkpoint_path());

  const std::filesystem::path out_dir = cfg.paths.out_dir;
  write_text_atomic(out_dir / "history.json",
                    history_to_json(history).dump(1) + "\n");

  // Validation report from the best-epoch weights.
  Dataset val_ds;
  val_ds.meta = ds.meta;
  for (std::size_t i : split.val) {
    val_ds.records.push_back(ds.records[i]);
    val_ds.spectra.push_back(ds.spectra[i]);
  }
  const EvalReport report = evaluate_model(model, val_ds, cfg.eval.threshold);
  write_text_atomic(out_dir / "val_report.json", report.to_json().dump(1) + "\n");
  write_text_atomic(out_dir / "val_report.txt", report.to_text_table());

  log << "train: best epoch " << history.best_epoch << " (val loss "
      << history.best_val_loss << "), " << history.epochs.size()
      << " epochs run -> " << cfg.checkpoint_path().string() << "\n";
}

void cmd_predict(const RunConfig& cfg,
                 const std::filesystem::path& checkpoint_path,
                 const std::filesystem::path& spectrum_csv, std::ostream& out) {
  LoadedCheckpoint loaded = load_checkpoint(checkpoint_path);
  if (cfg.grid.n_points() != loaded.model.config().input_points) {
    throw data_error("predict: grid has " + std::to_string(cfg.grid.n_points()) +
                     " points but the model expects " +
                     std::to_string(loaded.model.config().input_points));
  }
  const Spectrum s = read_spectrum_csv_resampled(spectrum_csv, cfg.grid);
  const Prediction pred = predict(loaded.model, s, cfg.eval.threshold);

  json j{{"class_probs", pred.class_probs},
         {"presence", pred.presence},
         {"threshold", cfg.eval.threshold}};
  if (!pred.ratios.empty()) {
    j["ratios"] = pred.ratios;
    j["volumes_ul"] = ratios_to_volume(pred.ratios, cfg.eval.full_scale_ul);
  }
  out << j.dump(1) << "\n";
}

void cmd_evaluate(const RunConfig& cfg,
                  const std::filesystem::path& checkpoint_path,
                  const std::filesystem::path& manifest_path, std::ostream& out) {
  LoadedCheckpoint loaded = load_checkpoint(checkpoint_path);
  const Dataset ds = read_dataset(manifest_path);
  if (ds.records.empty()) {
    throw data_error("evaluate: empty test set");
  }
  if (ds.meta.grid.n_points() != loaded.model.config().input_points) {
    throw data_error("evaluate: test grid does not match the model input");
  }
  ensure_dir(cfg.paths.out_dir);
  const EvalReport report =
      evaluate_model(loaded.model, ds, cfg.eval.threshold);
  const std::filesystem::path out_dir = cfg.paths.out_dir;
  write_text_atomic(out_dir / "report.json", report.to_json().dump(1) + "\n");
  write_text_atomic(out_dir / "report.txt", report.to_text_table());
  out << report.to_text_table();
}

void cmd_plot(const std::vector<std::filesystem::path>& csv_files,
              std::vector<std::string> labels,
              const std::filesystem::path& output, std::size_t width,
              std::size_t height, std::ostream& log) {
  if (csv_files.empty()) {
    throw config_error("plot: need at least one spectrum CSV");
  }
  PlotSpec spec;
  spec.output = output;
  spec.width = width;
  spec.height = height;
  for (const auto& file : csv_files) {
    spec.series.push_back(read_spectrum_csv(file));
  }
  if (labels.empty()) {
    for (const auto& file : csv_files) {
      labels.push_back(file.stem().string());
    }
  }
  if (labels.size() != csv_files.size()) {
    throw config_error("plot: need one --label per input file");
  }
  spec.labels = std::move(labels);
  // Series must share a grid; resample followers onto the first one.
  for (std::size_t i = 1; i < spec.series.size(); ++i) {
    spec.series[i] = resample(spec.series[i], spec.series.front().grid());
  }
  write_plot_svg(spec);
  log << "plot: " << spec.series.size() << " series -> " << output.string()
      << "\n";
}

void cmd_inspect_checkpoint(const std::filesystem::path& checkpoint_path,
                            std::ostream& out) {
  const CheckpointInfo info = inspect_checkpoint(checkpoint_path);
  json j{{"config", model_config_to_json(info.config)},
         {"meta",
          {{"seed", info.meta.seed},
           {"epochs_run", info.meta.epochs_run},
           {"final_train_loss", info.meta.final_train_loss},
           {"final_val_loss", info.meta.final_val_loss}}},
         {"param_count", info.param_count},
         {"checksum", info.checksum}};
  out << j.dump(1) << "\n";
}

}  // namespace ramix::cli
