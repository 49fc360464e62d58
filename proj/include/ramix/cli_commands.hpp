#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ramix/compound_library.hpp"
#include "ramix/run_config.hpp"

namespace ramix::cli {

// Command bodies shared between the executable and the test suites. Each
// throws (config_error/data_error/numeric_error) on failure; the executable
// maps exception types onto exit codes.

// Builds the configured library in memory (builtin stand-ins or custom peak
// tables).
CompoundLibrary build_library(const RunConfig& cfg);

// Reads a library manifest (library.json + per-compound CSVs) from disk.
CompoundLibrary load_library(const std::filesystem::path& manifest_path);

// Writes per-compound spectrum CSVs plus the library manifest into
// cfg.paths.out_dir.
void cmd_synth_compounds(const RunConfig& cfg, std::ostream& log);

// Enumerates mixtures, applies the augmentation policy, writes the dataset
// (packed by default, JSON on request) and, for the canonical 4-compound
// library, the held-out standard test set. Prints the item count.
void cmd_gen_dataset(const RunConfig& cfg, const std::string& format,
                     std::ostream& log);

// Trains the configured variant on the generated dataset; writes checkpoint,
// history JSON and a validation EvalReport.
void cmd_train(const RunConfig& cfg, std::ostream& log);

// Runs one spectrum (CSV, any covering uniform grid) through a checkpoint
// and prints the prediction JSON.
void cmd_predict(const RunConfig& cfg,
                 const std::filesystem::path& checkpoint_path,
                 const std::filesystem::path& spectrum_csv, std::ostream& out);

// Evaluates a checkpoint over a test manifest; writes report.json and
// report.txt into the out dir and prints the table.
void cmd_evaluate(const RunConfig& cfg,
                  const std::filesystem::path& checkpoint_path,
                  const std::filesystem::path& manifest_path, std::ostream& out);

// Overlays spectrum CSVs into one SVG.
void cmd_plot(const std::vector<std::filesystem::path>& csv_files,
              std::vector<std::string> labels,
              const std::filesystem::path& output, std::size_t width,
              std::size_t height, std::ostream& log);

// Prints checkpoint header information.
void cmd_inspect_checkpoint(const std::filesystem::path& checkpoint_path,
                            std::ostream& out);

}  // namespace ramix::cli
