// ramix: batch toolkit for synthetic Raman mixture analysis.
//
// Pipeline verbs, one per stage:
//   synth-compounds  write the pure-compound library
//   gen-dataset      enumerate + augment the mixture training set
//   train            fit RaMixNet I or II
//   predict          classify/quantify one spectrum
//   evaluate         score a checkpoint against a test manifest
//   plot             overlay spectra as SVG
//   inspect-checkpoint
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numeric
// failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "ramix/cli_commands.hpp"
#include "ramix/errors.hpp"

namespace {

struct GlobalFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> threshold;
  std::optional<std::string> variant;
  std::optional<std::size_t> epochs;
  std::optional<double> lambda_reg;
};

// Config file first, then flag overrides (flags win).
ramix::RunConfig effective_config(const GlobalFlags& flags) {
  ramix::RunConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = ramix::load_run_config(flags.config_path);
  }
  if (flags.seed) {
    cfg.seed = *flags.seed;
    cfg.propagate_seed();
  }
  if (flags.out_dir) cfg.paths.out_dir = *flags.out_dir;
  if (flags.threshold) cfg.eval.threshold = *flags.threshold;
  if (flags.variant) {
    cfg.model.variant = ramix::model_variant_from_name(*flags.variant);
  }
  if (flags.epochs) cfg.train.epochs = *flags.epochs;
  if (flags.lambda_reg) cfg.train.lambda_reg = *flags.lambda_reg;
  cfg.validate();
  return cfg;
}

void add_global_flags(CLI::App* cmd, GlobalFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON run configuration (defaults apply when omitted)");
  cmd->add_option("--seed", flags.seed,
                  "master seed pinning augmentation, init and shuffles "
                  "(default 42)");
  cmd->add_option("--out", flags.out_dir, "output directory (default 'out')");
  cmd->add_option("--threshold", flags.threshold,
                  "presence threshold on class probabilities (default 0.5)");
  cmd->add_option("--variant", flags.variant,
                  "model variant: ramixnet1 or ramixnet2")
      ->check(CLI::IsMember({"ramixnet1", "ramixnet2"}));
  cmd->add_option("--epochs", flags.epochs, "training epoch limit (default 50)");
  cmd->add_option("--lambda-reg", flags.lambda_reg,
                  "regression loss weight for ramixnet2 (default 1.0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic Raman mixture analysis toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;

  CLI::App* synth = app.add_subcommand(
      "synth-compounds", "write the pure-compound spectrum library");
  add_global_flags(synth, flags);

  CLI::App* gen = app.add_subcommand(
      "gen-dataset", "enumerate mixtures and write the training dataset");
  std::string gen_format = "packed";
  gen->add_option("--format", gen_format,
                  "dataset file format (default packed)")
      ->check(CLI::IsMember({"packed", "json"}));
  add_global_flags(gen, flags);

  CLI::App* train_cmd =
      app.add_subcommand("train", "train a RaMixNet model on the dataset");
  add_global_flags(train_cmd, flags);

  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "run one spectrum CSV through a trained checkpoint");
  std::string predict_checkpoint;
  std::string predict_spectrum;
  predict_cmd
      ->add_option("--checkpoint", predict_checkpoint, "checkpoint file")
      ->required();
  predict_cmd->add_option("spectrum", predict_spectrum, "spectrum CSV file")
      ->required();
  add_global_flags(predict_cmd, flags);

  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "score a checkpoint against a test manifest");
  std::string eval_checkpoint;
  std::string eval_manifest;
  eval_cmd->add_option("--checkpoint", eval_checkpoint, "checkpoint file")
      ->required();
  eval_cmd->add_option("--test-set", eval_manifest, "test manifest file")
      ->required();
  add_global_flags(eval_cmd, flags);

  CLI::App* plot_cmd =
      app.add_subcommand("plot", "overlay spectrum CSVs into an SVG");
  std::vector<std::string> plot_inputs;
  std::vector<std::string> plot_labels;
  std::string plot_output = "plot.svg";
  std::size_t plot_width = 960;
  std::size_t plot_height = 480;
  plot_cmd->add_option("files", plot_inputs, "spectrum CSV files")->required();
  plot_cmd->add_option("--label", plot_labels,
                       "legend label per file (default: file stem)");
  plot_cmd->add_option("--svg", plot_output, "output SVG path");
  plot_cmd->add_option("--width", plot_width, "canvas width (default 960)");
  plot_cmd->add_option("--height", plot_height, "canvas height (default 480)");
  add_global_flags(plot_cmd, flags);

  CLI::App* inspect_cmd = app.add_subcommand(
      "inspect-checkpoint", "print checkpoint configuration and metadata");
  std::string inspect_path;
  inspect_cmd->add_option("checkpoint", inspect_path, "checkpoint file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) {
      ramix::cli::cmd_synth_compounds(effective_config(flags), std::cout);
    } else if (gen->parsed()) {
      ramix::cli::cmd_gen_dataset(effective_config(flags), gen_format,
                                  std::cout);
    } else if (train_cmd->parsed()) {
      ramix::cli::cmd_train(effective_config(flags), std::cout);
    } else if (predict_cmd->parsed()) {
      ramix::cli::cmd_predict(effective_config(flags), predict_checkpoint,
                              predict_spectrum, std::cout);
    } else if (eval_cmd->parsed()) {
      ramix::cli::cmd_evaluate(effective_config(flags), eval_checkpoint,
                               eval_manifest, std::cout);
    } else if (plot_cmd->parsed()) {
      std::vector<std::filesystem::path> files(plot_inputs.begin(),
                                               plot_inputs.end());
      ramix::cli::cmd_plot(files, plot_labels, plot_output, plot_width,
                           plot_height, std::cout);
    } else if (inspect_cmd->parsed()) {
      ramix::cli::cmd_inspect_checkpoint(inspect_path, std::cout);
    }
  } catch (const ramix::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ramix::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
