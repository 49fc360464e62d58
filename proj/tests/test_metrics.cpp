#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ramix/errors.hpp"
#include "ramix/losses.hpp"
#include "ramix/metrics.hpp"
#include "ramix/mixtures.hpp"
#include "ramix/rng.hpp"
#include "test_util.hpp"

using namespace ramix;

namespace {

// Ground-truth presence bits of the six standard mixtures, canonical
// compound order (aniline, o-xylene, pyridine, toluene).
std::vector<std::vector<int>> standard_gt() {
  std::vector<std::vector<int>> gt;
  for (const auto& [name, ratios] : standard_test_compositions()) {
    std::vector<int> row;
    for (double r : ratios) row.push_back(r > 0 ? 1 : 0);
    gt.push_back(std::move(row));
  }
  return gt;
}

}  // namespace

TEST_CASE("perfect predictions on the six standard mixtures") {
  const auto gt = standard_gt();
  const auto counts = confusion_per_component(gt, gt);
  REQUIRE(counts.size() == 4);
  // aniline: present in S2, S3, S6.
  CHECK(counts[0].tp == 3);
  CHECK(counts[0].fn == 0);
  CHECK(counts[0].fp == 0);
  CHECK(counts[0].tn == 3);
  // o-xylene: present in S1, S3, S4, S5.
  CHECK(counts[1].tp == 4);
  CHECK(counts[1].fn == 0);
  CHECK(counts[1].fp == 0);
  CHECK(counts[1].tn == 2);
  // pyridine and toluene: 3 apiece.
  CHECK(counts[2].tp == 3);
  CHECK(counts[2].tn == 3);
  CHECK(counts[3].tp == 3);
  CHECK(counts[3].tn == 3);
}

TEST_CASE("confusion bookkeeping basics") {
  const std::vector<std::vector<int>> gt(5, std::vector<int>{1});
  const std::vector<std::vector<int>> pred(5, std::vector<int>{0});
  const auto counts = confusion_per_component(pred, gt);
  CHECK(counts[0].tp == 0);
  CHECK(counts[0].fn == 5);
  CHECK(counts[0].fp == 0);
  CHECK(counts[0].tn == 0);

  CHECK_THROWS_AS(confusion_per_component(pred, {}), data_error);
  auto bad = gt;
  bad[2] = {1, 0};
  CHECK_THROWS_AS(confusion_per_component(pred, bad), data_error);
}

TEST_CASE("confusion cells always sum to the sample count") {
  Rng rng(3);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t samples = 1 + rng.uniform_below(40);
    const std::size_t c = 1 + rng.uniform_below(6);
    std::vector<std::vector<int>> pred, gt;
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<int> p(c), g(c);
      for (std::size_t i = 0; i < c; ++i) {
        p[i] = rng.uniform01() < 0.5;
        g[i] = rng.uniform01() < 0.5;
      }
      pred.push_back(p);
      gt.push_back(g);
    }
    for (const auto& counts : confusion_per_component(pred, gt)) {
      CHECK(counts.total() == samples);
    }
  }
}

TEST_CASE("derived metrics: perfect, empty-positive and balanced cases") {
  // (3,0,0,3): all rates 1, accuracy 100%.
  const DerivedRates perfect = derived_metrics({3, 0, 0, 3});
  CHECK(*perfect.tpr == 1.0);
  CHECK(*perfect.tnr == 1.0);
  CHECK(*perfect.ppv == 1.0);
  CHECK(*perfect.npv == 1.0);
  CHECK(*perfect.accuracy == 1.0);
  CHECK(*perfect.f1 == 1.0);

  // (0,0,0,10): TPR is 0/0 -> undefined, not coerced.
  const DerivedRates negatives = derived_metrics({0, 0, 0, 10});
  CHECK(!negatives.tpr.has_value());
  CHECK(!negatives.ppv.has_value());
  CHECK(*negatives.tnr == 1.0);
  CHECK(*negatives.accuracy == 1.0);

  // (1,1,1,1): everything 0.5.
  const DerivedRates half = derived_metrics({1, 1, 1, 1});
  CHECK(*half.tpr == 0.5);
  CHECK(*half.ppv == 0.5);
  CHECK(*half.f1 == 0.5);
  CHECK(*half.accuracy == 0.5);

  CHECK_THROWS_AS(derived_metrics({0, 0, 0, 0}), data_error);
}

TEST_CASE("a perfect predictor scores all ones on any non-degenerate set") {
  Rng rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t c = 1 + rng.uniform_below(5);
    std::vector<std::vector<int>> gt;
    // Force at least one positive and one negative per component.
    for (int s = 0; s < 8; ++s) {
      std::vector<int> row(c);
      for (std::size_t i = 0; i < c; ++i) {
        row[i] = s == 0 ? 1 : (s == 1 ? 0 : rng.uniform01() < 0.5);
      }
      gt.push_back(std::move(row));
    }
    for (const auto& counts : confusion_per_component(gt, gt)) {
      const DerivedRates r = derived_metrics(counts);
      CHECK(*r.tpr == 1.0);
      CHECK(*r.tnr == 1.0);
      CHECK(*r.ppv == 1.0);
      CHECK(*r.npv == 1.0);
      CHECK(*r.accuracy == 1.0);
      CHECK(*r.f1 == 1.0);
    }
  }
}

TEST_CASE("r2 score") {
  CHECK(r2_score({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
  // Constant predictor at the mean scores exactly 0.
  CHECK(r2_score({2, 2, 2}, {1, 2, 3}) == doctest::Approx(0.0));
  // Worse than the mean goes negative.
  CHECK(r2_score({3, 2, 1}, {1, 2, 3}) < 0.0);
  CHECK_THROWS_AS(r2_score({0, 1}, {0.5, 0.5}), data_error);
  CHECK_THROWS_AS(r2_score({0.0}, {0.5}), data_error);
}

TEST_CASE("regression accuracy definition") {
  CHECK(regression_accuracy({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(100.0));
  // Uniform absolute error 0.12 -> 88%.
  CHECK(regression_accuracy({0.62, 0.38}, {0.5, 0.5}) == doctest::Approx(88.0));
}

TEST_CASE("regression accuracy over the printed quantification rows") {
  // 24 (prediction, ground truth) dosage pairs of the six standard samples;
  // the pooled 100*(1-MAE) was worked out by hand before the implementation:
  // total abs error 4.43 over 24 entries -> 81.5416%.
  const std::vector<double> pred = {
      0.01, 0.97, 0.08, 0.96,  // S1
      0.88, 0.15, 0.94, 0.16,  // S2
      0.90, 0.90, 0.65, 0.17,  // S3
      0.03, 0.55, 0.64, 0.13,  // S4
      0.04, 0.57, 0.68, 0.66,  // S5
      0.85, 0.07, 0.29, 0.85,  // S6
  };
  const std::vector<double> gt = {
      0, 1, 0, 1,  //
      1, 0, 1, 0,  //
      1, 1, 0, 0,  //
      0, 1, 1, 0,  //
      0, 1, 1, 1,  //
      1, 0, 0, 1,  //
  };
  const double acc = regression_accuracy(pred, gt);
  CHECK(acc == doctest::Approx(100.0 * (1.0 - 4.43 / 24.0)).epsilon(1e-12));
  CHECK(acc > 80.0);
  CHECK(acc < 95.0);
}

TEST_CASE("mse agrees with the uniform-weight training loss") {
  CHECK(mean_squared_error({1, 1}, {1, 1}) == 0.0);
  CHECK(mean_squared_error({1, 0}, {0, 0}) == doctest::Approx(0.5));

  Rng rng(7);
  const auto p = testutil::random_vector(rng, 12);
  const auto t = testutil::random_vector(rng, 12);
  nn::Tensor tp = nn::Tensor::zeros2(3, 4);
  nn::Tensor tt = nn::Tensor::zeros2(3, 4);
  nn::Tensor tw = nn::Tensor::zeros2(3, 4);
  for (std::size_t i = 0; i < 12; ++i) {
    tp.data()[i] = p[i];
    tt.data()[i] = t[i];
    tw.data()[i] = 1.0;
  }
  CHECK(mean_squared_error(p, t) ==
        doctest::Approx(nn::weighted_mse(tp, tt, tw).value).epsilon(1e-14));
}

TEST_CASE("metrics are order-invariant") {
  Rng rng(11);
  std::vector<std::vector<int>> pred, gt;
  std::vector<double> rp, rg;
  for (int s = 0; s < 25; ++s) {
    std::vector<int> p(3), g(3);
    for (int i = 0; i < 3; ++i) {
      p[i] = rng.uniform01() < 0.5;
      g[i] = rng.uniform01() < 0.5;
    }
    pred.push_back(p);
    gt.push_back(g);
    rp.push_back(rng.uniform01());
    rg.push_back(rng.uniform01());
  }

  auto counts_a = confusion_per_component(pred, gt);
  const double r2_a = r2_score(rp, rg);
  const double acc_a = regression_accuracy(rp, rg);

  // One fixed permutation applied to every parallel array.
  std::vector<std::size_t> perm(pred.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.uniform_below(i)]);
  }
  std::vector<std::vector<int>> pred_p, gt_p;
  std::vector<double> rp_p, rg_p;
  for (std::size_t i : perm) {
    pred_p.push_back(pred[i]);
    gt_p.push_back(gt[i]);
    rp_p.push_back(rp[i]);
    rg_p.push_back(rg[i]);
  }
  auto counts_b = confusion_per_component(pred_p, gt_p);
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    CHECK(counts_a[i].tp == counts_b[i].tp);
    CHECK(counts_a[i].fn == counts_b[i].fn);
    CHECK(counts_a[i].fp == counts_b[i].fp);
    CHECK(counts_a[i].tn == counts_b[i].tn);
  }
  CHECK(r2_score(rp_p, rg_p) == doctest::Approx(r2_a).epsilon(1e-12));
  CHECK(regression_accuracy(rp_p, rg_p) == doctest::Approx(acc_a).epsilon(1e-12));
}

TEST_CASE("eval report serialization round-trip") {
  const auto gt = standard_gt();
  std::vector<std::vector<double>> ratios_gt, ratios_pred;
  Rng rng(13);
  for (const auto& row : gt) {
    std::vector<double> r, p;
    for (int bit : row) {
      r.push_back(bit);
      p.push_back(std::clamp(bit + rng.uniform(-0.1, 0.1), 0.0, 1.0));
    }
    ratios_gt.push_back(r);
    ratios_pred.push_back(p);
  }
  const EvalReport report = make_eval_report(
      canonical_compound_names(), gt, gt, &ratios_pred, &ratios_gt);
  CHECK(report.classification_accuracy_percent == doctest::Approx(100.0));
  REQUIRE(report.regression.has_value());

  const nlohmann::json j = report.to_json();
  const EvalReport back = EvalReport::from_json(j);
  CHECK(back.component_names == report.component_names);
  CHECK(back.classification_accuracy_percent ==
        report.classification_accuracy_percent);
  CHECK(back.regression->r2 == doctest::Approx(report.regression->r2));
  CHECK(back.counts[1].tp == 4);

  const std::string table = report.to_text_table();
  CHECK(table.find("aniline") != std::string::npos);
  CHECK(table.find("TPR") != std::string::npos);

  // Undefined rates render as n/a, not as numbers.
  const EvalReport undef = make_eval_report(
      {"x"}, {{0}, {0}}, {{0}, {0}}, nullptr, nullptr);
  CHECK(undef.to_text_table().find("n/a") != std::string::npos);
  CHECK(undef.to_json()["components"][0]["tpr"].is_null());
}
