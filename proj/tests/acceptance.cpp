// Acceptance suite: runs every committed criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramix/augment.hpp"
#include "ramix/dataset.hpp"
#include "ramix/grad_check.hpp"
#include "ramix/losses.hpp"
#include "ramix/metrics.hpp"
#include "ramix/mixtures.hpp"
#include "ramix/model.hpp"
#include "ramix/train.hpp"

namespace fs = std::filesystem;
using namespace ramix;

namespace {

constexpr std::uint64_t kModelInitStream = 0x30D31ULL;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// helpers

int run_cli(const std::string& args, const fs::path& capture) {
  const std::string cmd =
      std::string(RAMIX_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Enumeration count through the CLI

Outcome criterion_enumeration_count() {
  const fs::path dir = fresh_dir("ramix_acc_count");
  const fs::path out = dir / "out";
  const fs::path cfg_path = dir / "cfg.json";
  {
    nlohmann::json cfg{{"mixture_gen", {{"levels_t", 10}}},
                       {"augment", {{"enabled", false}}},
                       {"paths", {{"out_dir", out.string()}}}};
    std::ofstream f(cfg_path);
    f << cfg.dump();
  }
  if (run_cli("synth-compounds --config " + cfg_path.string(), dir / "log1") != 0) {
    return {false, "synth-compounds failed"};
  }
  if (run_cli("gen-dataset --config " + cfg_path.string(), dir / "log2") != 0) {
    return {false, "gen-dataset failed"};
  }
  const std::string log = slurp(dir / "log2");
  if (log.find("9999 items") == std::string::npos) {
    return {false, "stdout lacks '9999 items': " + log};
  }
  const Dataset ds = read_dataset(out / "dataset.rmx");
  if (ds.records.size() != 9999 || ds.meta.item_count != 9999) {
    return {false, "manifest holds " + std::to_string(ds.records.size()) +
                       " items"};
  }
  fs::remove_all(dir);
  return {true, "exactly 9999 items (C=4, t=10, augmentation off)"};
}

// ---------------------------------------------------------------------------
// 2. Desk-scale multi-label classification over five fixed seeds

Outcome criterion_classification() {
  const CompoundLibrary lib = builtin_library(WavenumberGrid::canonical());
  const std::vector<std::uint64_t> seeds = {101, 202, 303, 404, 505};
  int perfect_seeds = 0;
  double worst_acc = 100.0;
  std::string per_seed;

  for (std::uint64_t seed : seeds) {
    DatasetGenConfig gen;
    gen.mixture.levels_t = 3;
    gen.augment.seed = seed;
    gen.augment_reps = 2;
    gen.clean_copy = true;
    const Dataset ds = build_dataset(lib, gen);
    const SplitIndices split = split_train_val(ds.group_ids(), 0.1, seed);

    RaMixNet model(ModelConfig{},
                   Rng::substream(seed, kModelInitStream).next_u64());
    TrainConfig tc;
    tc.epochs = 15;
    tc.batch_size = 16;
    tc.patience = 8;
    tc.seed = seed;
    train(model, ds.to_train_items(split.train), ds.to_train_items(split.val),
          tc);

    AugmentConfig test_aug;
    test_aug.seed = seed;
    std::size_t correct = 0;
    std::size_t total = 0;
    for (const TestMixture& m : standard_test_set(lib, test_aug)) {
      const Prediction p = predict(model, m.spectrum, 0.5);
      for (std::size_t c = 0; c < 4; ++c, ++total) {
        correct += p.presence[c] == m.label.presence()[c] ? 1 : 0;
      }
    }
    const double acc = 100.0 * static_cast<double>(correct) /
                       static_cast<double>(total);
    if (correct == total) ++perfect_seeds;
    worst_acc = std::min(worst_acc, acc);
    per_seed += " " + std::to_string(seed) + ":" + fmt(acc, 1) + "%";
  }

  const bool pass = perfect_seeds >= 4 && worst_acc >= 95.0;
  return {pass, std::to_string(perfect_seeds) +
                    "/5 seeds at 100%, worst " + fmt(worst_acc, 1) + "%;" +
                    per_seed};
}

// ---------------------------------------------------------------------------
// 3. Desk-scale regression

Outcome criterion_regression() {
  const std::uint64_t seed = 314;
  const CompoundLibrary lib = builtin_library(WavenumberGrid::canonical());
  DatasetGenConfig gen;
  gen.mixture.levels_t = 5;
  gen.augment.seed = seed;
  gen.augment_reps = 1;
  gen.clean_copy = true;
  const Dataset ds = build_dataset(lib, gen);
  const SplitIndices split = split_train_val(ds.group_ids(), 0.1, seed);

  ModelConfig mc;
  mc.variant = ModelVariant::ramixnet2;
  RaMixNet model(mc, Rng::substream(seed, kModelInitStream).next_u64());
  TrainConfig tc;
  tc.epochs = 30;
  tc.batch_size = 16;
  tc.patience = 10;
  tc.seed = seed;
  train(model, ds.to_train_items(split.train), ds.to_train_items(split.val), tc);

  std::vector<double> flat_pred;
  std::vector<double> flat_gt;
  for (std::size_t i : split.val) {
    const Spectrum s(ds.meta.grid, ds.spectra[i]);
    const Prediction p = predict(model, s, 0.5);
    for (std::size_t c = 0; c < 4; ++c) {
      flat_pred.push_back(p.ratios[c]);
      flat_gt.push_back(ds.records[i].label.ratios()[c]);
    }
  }
  const double r2 = r2_score(flat_pred, flat_gt);
  const double acc = regression_accuracy(flat_pred, flat_gt);
  const bool pass = r2 >= 0.80 && acc >= 85.0;
  return {pass, "held-out 10% (" + std::to_string(split.val.size()) +
                    " items): R2=" + fmt(r2) + " (need >= 0.80), reg-acc=" +
                    fmt(acc, 2) + "% (need >= 85%)"};
}

// ---------------------------------------------------------------------------
// 4. Volume conversion golden rows

Outcome criterion_volumes() {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> rows = {
      {{0.01, 0.97, 0.08, 0.96}, {2, 194, 16, 192}},
      {{0.88, 0.15, 0.94, 0.16}, {176, 30, 188, 32}},
      {{0.90, 0.90, 0.65, 0.17}, {180, 180, 130, 34}},
      {{0.03, 0.55, 0.64, 0.13}, {6, 110, 128, 26}},
      {{0.04, 0.57, 0.68, 0.66}, {8, 114, 136, 132}},
      {{0.85, 0.07, 0.29, 0.85}, {170, 14, 58, 170}},
  };
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto volumes = ratios_to_volume(rows[r].first);
    for (std::size_t c = 0; c < 4; ++c) {
      if (std::fabs(volumes[c] - rows[r].second[c]) > 1e-9) {
        return {false, "row S" + std::to_string(r + 1) + " component " +
                           std::to_string(c) + ": got " + fmt(volumes[c], 12)};
      }
    }
  }
  return {true, "all 24 printed microliter values reproduced"};
}

// ---------------------------------------------------------------------------
// 5. Confusion bookkeeping

Outcome criterion_confusion() {
  std::vector<std::vector<int>> gt;
  for (const auto& [name, ratios] : standard_test_compositions()) {
    std::vector<int> row;
    for (double r : ratios) row.push_back(r > 0 ? 1 : 0);
    gt.push_back(std::move(row));
  }
  const auto counts = confusion_per_component(gt, gt);
  const auto matches = [](const ConfusionCounts& c, std::uint64_t tp,
                          std::uint64_t fn, std::uint64_t fp, std::uint64_t tn) {
    return c.tp == tp && c.fn == fn && c.fp == fp && c.tn == tn;
  };
  if (!matches(counts[0], 3, 0, 0, 3)) {
    return {false, "aniline counts off"};
  }
  if (!matches(counts[1], 4, 0, 0, 2)) {
    return {false, "o-xylene counts off"};
  }
  return {true, "aniline (3,0,0,3) and o-xylene (4,0,0,2), exact"};
}

// ---------------------------------------------------------------------------
// 6. Threshold behavior

Outcome criterion_threshold() {
  const std::vector<double> s4 = {0.03, 0.55, 0.64, 0.13};
  const std::vector<double> s6 = {0.85, 0.07, 0.29, 0.85};
  auto presence = [](const std::vector<double>& probs, double thr) {
    std::vector<int> out;
    for (double p : probs) out.push_back(p >= thr ? 1 : 0);
    return out;
  };
  if (presence(s4, 0.5) != std::vector<int>{0, 1, 1, 0}) {
    return {false, "0.55 not counted as present at threshold 0.5"};
  }
  if (presence(s6, 0.5) != std::vector<int>{1, 0, 0, 1}) {
    return {false, "0.29 not counted as absent at threshold 0.5"};
  }
  Rng rng(606);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<double> probs(4);
    for (double& p : probs) p = rng.uniform01();
    int last_bits = 4;
    for (double thr = 0.0; thr <= 1.0; thr += 0.05) {
      int bits = 0;
      for (double p : probs) bits += p >= thr ? 1 : 0;
      if (bits > last_bits) {
        return {false, "raising the threshold added a presence bit"};
      }
      last_bits = bits;
    }
  }
  return {true, "table rows honored; monotone over 1000 random vectors"};
}

// ---------------------------------------------------------------------------
// 7. Gradient correctness

Outcome criterion_gradients() {
  using nn::Tensor;
  Rng rng(707);

  // Single dense + BCE, strict bound.
  {
    nn::Dense dense(6, 3);
    dense.init(rng, nn::InitKind::glorot_uniform);
    Tensor x = Tensor::zeros2(4, 6);
    Tensor y = Tensor::zeros2(4, 3);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < y.size(); ++i) {
      y.data()[i] = rng.uniform01() < 0.5 ? 0.0 : 1.0;
    }
    auto loss = [&] { return nn::bce_with_logits(dense.forward(x), y).value; };
    auto back = [&] {
      dense.zero_grads();
      const auto res = nn::bce_with_logits(dense.forward(x), y);
      dense.backward(x, res.grad);
    };
    const double err = nn::grad_check_max_rel_error(dense.params(), loss, back);
    if (err >= 1e-7) {
      return {false, "dense+bce error " + fmt(err, 10) + " >= 1e-7"};
    }
  }

  // Conv layer alone with MSE.
  {
    nn::Conv1D conv(2, 3, 5);
    conv.init(rng, nn::InitKind::he_uniform);
    Tensor x = Tensor::zeros3(2, 2, 12);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(-1, 1);
    Tensor target = Tensor::zeros3(2, 3, 12);
    Tensor ones = target;
    for (std::size_t i = 0; i < target.size(); ++i) {
      target.data()[i] = rng.uniform(-1, 1);
      ones.data()[i] = 1.0;
    }
    auto loss = [&] {
      return nn::weighted_mse(conv.forward(x), target, ones).value;
    };
    auto back = [&] {
      conv.zero_grads();
      const auto res = nn::weighted_mse(conv.forward(x), target, ones);
      conv.backward(x, res.grad);
    };
    const double err = nn::grad_check_max_rel_error(conv.params(), loss, back);
    if (err >= 1e-7) {
      return {false, "conv+mse error " + fmt(err, 10) + " >= 1e-7"};
    }
  }

  // Small composed dual-head model, both losses active.
  {
    ModelConfig cfg;
    cfg.variant = ModelVariant::ramixnet2;
    cfg.conv_blocks = {{3, 3}, {4, 3}};
    cfg.dense_sizes = {8};
    cfg.num_classes = 3;
    cfg.input_points = 40;
    RaMixNet model(cfg, 7070);
    if (model.param_count() >= 10000) {
      return {false, "composed test model too large"};
    }
    Tensor x = Tensor::zeros3(2, 1, 40);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform01();
    Tensor presence = Tensor::zeros2(2, 3);
    Tensor ratios = Tensor::zeros2(2, 3);
    presence.at2(0, 0) = 1.0;
    ratios.at2(0, 0) = 0.6;
    presence.at2(1, 2) = 1.0;
    ratios.at2(1, 2) = 0.3;
    Tensor ones = presence;
    std::fill(ones.data(), ones.data() + ones.size(), 1.0);

    auto loss = [&] {
      const auto out = model.forward(x);
      const double bce = nn::bce_with_logits(out.cls_logits, presence).value;
      const Tensor pred = nn::sigmoid_forward(out.reg_logits);
      return bce + nn::weighted_mse(pred, ratios, ones).value;
    };
    auto back = [&] {
      model.zero_grads();
      const auto out = model.forward(x);
      const auto bce = nn::bce_with_logits(out.cls_logits, presence);
      const Tensor pred = nn::sigmoid_forward(out.reg_logits);
      const auto mse = nn::weighted_mse(pred, ratios, ones);
      Tensor dreg = mse.grad;
      for (std::size_t i = 0; i < dreg.size(); ++i) {
        const double p = pred.data()[i];
        dreg.data()[i] *= p * (1.0 - p);
      }
      model.backward(bce.grad, dreg);
    };
    const double err = nn::grad_check_max_rel_error(model.params(), loss, back);
    if (err >= 1e-5) {
      return {false, "composed dual-head error " + fmt(err, 8) + " >= 1e-5"};
    }
    return {true, "dense+bce and conv+mse < 1e-7; composed dual-head < 1e-5"};
  }
}

// ---------------------------------------------------------------------------
// 8. Convolution vs naive triple-loop oracle

Outcome criterion_conv_oracle() {
  using nn::Tensor;
  Rng rng(808);
  int cases = 0;
  double worst = 0.0;
  for (int iter = 0; iter < 120; ++iter) {
    const std::size_t in_ch = 1 + rng.uniform_below(3);
    const std::size_t out_ch = 1 + rng.uniform_below(4);
    const std::size_t ksize = 1 + 2 * rng.uniform_below(4);
    const std::size_t len =
        std::max<std::size_t>(ksize, 2 + rng.uniform_below(30));
    const std::size_t batch = 1 + rng.uniform_below(3);

    nn::Conv1D layer(in_ch, out_ch, ksize);
    std::vector<double> w(out_ch * in_ch * ksize);
    std::vector<double> bias(out_ch);
    for (double& v : w) v = rng.uniform(-1, 1);
    for (double& v : bias) v = rng.uniform(-1, 1);
    auto blocks = layer.params();
    std::copy(w.begin(), w.end(), blocks[0].values);
    std::copy(bias.begin(), bias.end(), blocks[1].values);

    Tensor x = Tensor::zeros3(batch, in_ch, len);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform(-1, 1);

    const Tensor got = layer.forward(x);
    // Independent naive triple loop.
    const auto half = static_cast<std::ptrdiff_t>(ksize / 2);
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t m = 0; m < out_ch; ++m) {
        for (std::size_t i = 0; i < len; ++i) {
          double acc = bias[m];
          for (std::size_t c = 0; c < in_ch; ++c) {
            for (std::size_t k = 0; k < ksize; ++k) {
              const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) +
                                       static_cast<std::ptrdiff_t>(k) - half;
              if (j >= 0 && j < static_cast<std::ptrdiff_t>(len)) {
                acc += w[(m * in_ch + c) * ksize + k] *
                       x.at3(b, c, static_cast<std::size_t>(j));
              }
            }
          }
          const double rel = std::fabs(got.at3(b, m, i) - acc) /
                             std::max({1.0, std::fabs(acc),
                                       std::fabs(got.at3(b, m, i))});
          worst = std::max(worst, rel);
        }
      }
    }
    ++cases;
  }
  const bool pass = cases >= 100 && worst <= 1e-13;
  return {pass, std::to_string(cases) + " randomized shapes, worst relative " +
                    fmt(worst, 18)};
}

// ---------------------------------------------------------------------------
// 9. Augmentation invertibility and range compliance

Outcome criterion_augment_invertibility() {
  const CompoundLibrary lib = builtin_library(WavenumberGrid::canonical());
  const Spectrum base = linear_combine(lib.spectra(), {0.3, 1.0, 0.0, 0.6});
  AugmentConfig cfg;
  cfg.seed = 909;
  const BaselineRanges r;

  double worst = 0.0;
  for (std::uint64_t item = 0; item < 1000; ++item) {
    const AugmentResult res = augment_spectrum_stream(base, cfg, item);

    // Parameter ranges per family.
    const BaselineSpec& b = res.record.baseline;
    bool in_range = true;
    switch (b.family) {
      case BaselineFamily::gaussian:
        in_range = b.mu_cm1 >= r.gaussian_mu_lo && b.mu_cm1 <= r.gaussian_mu_hi &&
                   b.sigma2 == r.gaussian_sigma2 &&
                   b.amplitude >= r.gaussian_amp_lo &&
                   b.amplitude <= r.gaussian_amp_hi;
        break;
      case BaselineFamily::sigmoid:
        in_range = b.slope >= r.sigmoid_slope_lo && b.slope <= r.sigmoid_slope_hi &&
                   b.centre_cm1 >= r.sigmoid_centre_lo &&
                   b.centre_cm1 <= r.sigmoid_centre_hi &&
                   b.amplitude >= r.sigmoid_amp_lo &&
                   b.amplitude <= r.sigmoid_amp_hi;
        break;
      case BaselineFamily::exponential:
        in_range = b.slope >= r.exponential_slope_lo &&
                   b.slope <= r.exponential_slope_hi &&
                   b.amplitude >= r.exponential_amp_lo &&
                   b.amplitude <= r.exponential_amp_hi;
        break;
      case BaselineFamily::polynomial:
        in_range = b.coefficients.size() >= 1 && b.coefficients.size() <= 5;
        break;
    }
    if (!in_range) {
      return {false, "sampled parameter outside its interval at item " +
                         std::to_string(item)};
    }

    // Invertibility: subtract the recorded baseline, compare against the
    // independently recomputed normalized input.
    const Spectrum recovered = remove_baseline(res.spectrum, res.record);
    std::vector<double> scaled(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      scaled[i] = res.record.scale * base[i] + res.record.shift;
    }
    const Spectrum want =
        normalize_minmax(Spectrum(base.grid(), std::move(scaled)));
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst = std::max(worst, std::fabs(recovered[i] - want[i]));
    }
    if (worst > 1e-12) {
      return {false, "recovery error " + fmt(worst, 16) + " at item " +
                         std::to_string(item)};
    }
  }
  return {true, "1000 augmentations inverted, worst error " + fmt(worst, 16)};
}

// ---------------------------------------------------------------------------
// 10. Full-pipeline byte determinism through the CLI

Outcome criterion_determinism() {
  const fs::path dir = fresh_dir("ramix_acc_det");

  auto pipeline = [&](const std::string& tag) -> fs::path {
    const fs::path out = dir / tag;
    const fs::path cfg_path = dir / (tag + ".json");
    nlohmann::json cfg{
        {"seed", 2024},
        {"mixture_gen", {{"levels_t", 2}}},
        {"augment", {{"reps", 1}}},
        {"model",
         {{"variant", "ramixnet2"},
          {"conv_blocks", {{4, 5}, {8, 5}}},
          {"dense_sizes", {16}}}},
        {"train", {{"epochs", 3}, {"batch_size", 8}, {"validation_fraction", 0.2}}},
        {"paths", {{"out_dir", out.string()}}}};
    {
      std::ofstream f(cfg_path);
      f << cfg.dump();
    }
    const std::string c = " --config " + cfg_path.string();
    if (run_cli("synth-compounds" + c, dir / (tag + "_log1")) != 0) return {};
    if (run_cli("gen-dataset" + c, dir / (tag + "_log2")) != 0) return {};
    if (run_cli("train" + c, dir / (tag + "_log3")) != 0) return {};
    if (run_cli("evaluate" + c + " --checkpoint " +
                    (out / "checkpoint.rmxc").string() + " --test-set " +
                    (out / "test_standard.json").string(),
                dir / (tag + "_log4")) != 0) {
      return {};
    }
    return out;
  };

  const fs::path a = pipeline("a");
  const fs::path b = pipeline("b");
  if (a.empty() || b.empty()) {
    return {false, "pipeline run failed"};
  }
  const std::vector<std::string> artifacts = {
      "library.json",       "compounds/aniline.csv", "dataset.rmx",
      "test_standard.json", "checkpoint.rmxc",       "history.json",
      "report.json",        "report.txt"};
  for (const std::string& rel : artifacts) {
    const std::string ba = slurp(a / rel);
    const std::string bb = slurp(b / rel);
    if (ba.empty() || ba != bb) {
      return {false, rel + " differs between identical runs"};
    }
  }
  fs::remove_all(dir);
  return {true, "gen/train/evaluate artifacts byte-identical across reruns"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "enumeration count (t^C - 1 = 9999)", 60.0,
       criterion_enumeration_count},
      {2, "desk-scale multi-label classification, 5 seeds", 900.0,
       criterion_classification},
      {3, "desk-scale regression (R2, regression accuracy)", 1500.0,
       criterion_regression},
      {4, "ratio-to-volume conversion golden rows", 10.0, criterion_volumes},
      {5, "per-component confusion bookkeeping", 10.0, criterion_confusion},
      {6, "presence threshold behavior and monotonicity", 10.0,
       criterion_threshold},
      {7, "gradient correctness (finite differences)", 120.0,
       criterion_gradients},
      {8, "conv1d vs naive triple-loop oracle", 60.0, criterion_conv_oracle},
      {9, "augmentation invertibility and sampling ranges", 120.0,
       criterion_augment_invertibility},
      {10, "full-pipeline byte determinism", 300.0, criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (sec > c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + fmt(c.time_limit_s, 0) + "s budget]";
    }
    std::printf("%s criterion %2d (%7.1fs): %s :: %s\n",
                outcome.pass ? "PASS" : "FAIL", c.id, sec, c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  if (failures == 0) {
    std::printf("all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
