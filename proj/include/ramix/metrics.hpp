#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ramix {

// Per-component 2x2 confusion tally over an evaluation set.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fn + fp + tn; }
};

// Derived rates. A 0/0 ratio is reported as empty, never coerced to 0 or 1.
struct DerivedRates {
  std::optional<double> tpr;       // tp / (tp + fn)
  std::optional<double> tnr;       // tn / (tn + fp)
  std::optional<double> ppv;       // tp / (tp + fp)
  std::optional<double> npv;       // tn / (tn + fn)
  std::optional<double> accuracy;  // (tp + tn) / total
  std::optional<double> f1;        // 2 ppv tpr / (ppv + tpr)
};

// One confusion tally per component. preds/gts: one presence vector (0/1
// entries) per sample, all of equal length C.
std::vector<ConfusionCounts> confusion_per_component(
    const std::vector<std::vector<int>>& preds,
    const std::vector<std::vector<int>>& gts);

DerivedRates derived_metrics(const ConfusionCounts& counts);

// Coefficient of determination over flattened (pred, gt) pairs; can be
// negative. Throws data_error when the ground truth has zero variance.
double r2_score(const std::vector<double>& preds,
                const std::vector<double>& gts);

// 100 * (1 - mean absolute error) over all components and samples, on the
// ratio scale.
double regression_accuracy(const std::vector<double>& preds,
                           const std::vector<double>& gts);

double mean_squared_error(const std::vector<double>& preds,
                          const std::vector<double>& gts);

struct RegressionMetrics {
  double mse = 0.0;
  double r2 = 0.0;
  double regression_accuracy_percent = 0.0;
};

// Full evaluation summary: per-component confusion + rates, the pooled
// multi-label bit accuracy, and (for quantitative models) the regression
// block.
struct EvalReport {
  std::vector<std::string> component_names;
  std::vector<ConfusionCounts> counts;
  std::vector<DerivedRates> rates;
  double classification_accuracy_percent = 0.0;  // pooled over all bits
  std::optional<RegressionMetrics> regression;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
  // Aligned plain-text table, one row per component.
  std::string to_text_table() const;
};

EvalReport make_eval_report(const std::vector<std::string>& component_names,
                            const std::vector<std::vector<int>>& pred_presence,
                            const std::vector<std::vector<int>>& gt_presence,
                            const std::vector<std::vector<double>>* pred_ratios,
                            const std::vector<std::vector<double>>* gt_ratios);

}  // namespace ramix
