#include "ramix/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ramix/errors.hpp"

namespace ramix {

std::vector<ConfusionCounts> confusion_per_component(
    const std::vector<std::vector<int>>& preds,
    const std::vector<std::vector<int>>& gts) {
  if (preds.size() != gts.size()) {
    throw data_error("confusion: " + std::to_string(preds.size()) +
                     " predictions vs " + std::to_string(gts.size()) +
                     " ground truths");
  }
  if (preds.empty()) {
    throw data_error("confusion: empty evaluation set");
  }
  const std::size_t c = gts.front().size();
  std::vector<ConfusionCounts> out(c);
  for (std::size_t s = 0; s < preds.size(); ++s) {
    if (preds[s].size() != c || gts[s].size() != c) {
      throw data_error("confusion: component count mismatch at sample " +
                       std::to_string(s));
    }
    for (std::size_t i = 0; i < c; ++i) {
      const bool p = preds[s][i] != 0;
      const bool g = gts[s][i] != 0;
      if (p && g) ++out[i].tp;
      if (!p && g) ++out[i].fn;
      if (p && !g) ++out[i].fp;
      if (!p && !g) ++out[i].tn;
    }
  }
  return out;
}

DerivedRates derived_metrics(const ConfusionCounts& counts) {
  if (counts.total() == 0) {
    throw data_error("derived_metrics: empty counts");
  }
  auto ratio = [](std::uint64_t num,
                  std::uint64_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  DerivedRates r;
  r.tpr = ratio(counts.tp, counts.tp + counts.fn);
  r.tnr = ratio(counts.tn, counts.tn + counts.fp);
  r.ppv = ratio(counts.tp, counts.tp + counts.fp);
  r.npv = ratio(counts.tn, counts.tn + counts.fn);
  r.accuracy = ratio(counts.tp + counts.tn, counts.total());
  if (r.ppv && r.tpr && (*r.ppv + *r.tpr) > 0.0) {
    r.f1 = 2.0 * *r.ppv * *r.tpr / (*r.ppv + *r.tpr);
  }
  return r;
}

namespace {

void check_same_size(const std::vector<double>& a, const std::vector<double>& b,
                     const char* who) {
  if (a.size() != b.size() || a.empty()) {
    throw data_error(std::string(who) + ": length mismatch or empty input");
  }
}

}  // namespace

double r2_score(const std::vector<double>& preds,
                const std::vector<double>& gts) {
  check_same_size(preds, gts, "r2_score");
  if (gts.size() < 2) {
    throw data_error("r2_score: need at least 2 samples");
  }
  double mean = 0.0;
  for (double g : gts) mean += g;
  mean /= static_cast<double>(gts.size());

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    ss_res += (gts[i] - preds[i]) * (gts[i] - preds[i]);
    ss_tot += (gts[i] - mean) * (gts[i] - mean);
  }
  if (!(ss_tot > 0.0)) {
    throw data_error("r2_score: ground truth has zero variance");
  }
  return 1.0 - ss_res / ss_tot;
}

double regression_accuracy(const std::vector<double>& preds,
                           const std::vector<double>& gts) {
  check_same_size(preds, gts, "regression_accuracy");
  double mae = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    mae += std::fabs(preds[i] - gts[i]);
  }
  mae /= static_cast<double>(preds.size());
  return 100.0 * (1.0 - mae);
}

double mean_squared_error(const std::vector<double>& preds,
                          const std::vector<double>& gts) {
  check_same_size(preds, gts, "mse");
  double acc = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    acc += (preds[i] - gts[i]) * (preds[i] - gts[i]);
  }
  return acc / static_cast<double>(preds.size());
}

EvalReport make_eval_report(const std::vector<std::string>& component_names,
                            const std::vector<std::vector<int>>& pred_presence,
                            const std::vector<std::vector<int>>& gt_presence,
                            const std::vector<std::vector<double>>* pred_ratios,
                            const std::vector<std::vector<double>>* gt_ratios) {
  EvalReport report;
  report.component_names = component_names;
  report.counts = confusion_per_component(pred_presence, gt_presence);
  if (report.counts.size() != component_names.size()) {
    throw data_error("eval_report: component name count mismatch");
  }
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  for (const auto& c : report.counts) {
    report.rates.push_back(derived_metrics(c));
    correct += c.tp + c.tn;
    total += c.total();
  }
  report.classification_accuracy_percent =
      100.0 * static_cast<double>(correct) / static_cast<double>(total);

  if (pred_ratios && gt_ratios) {
    std::vector<double> flat_pred;
    std::vector<double> flat_gt;
    for (const auto& row : *pred_ratios) {
      flat_pred.insert(flat_pred.end(), row.begin(), row.end());
    }
    for (const auto& row : *gt_ratios) {
      flat_gt.insert(flat_gt.end(), row.begin(), row.end());
    }
    RegressionMetrics reg;
    reg.mse = mean_squared_error(flat_pred, flat_gt);
    reg.r2 = r2_score(flat_pred, flat_gt);
    reg.regression_accuracy_percent = regression_accuracy(flat_pred, flat_gt);
    report.regression = reg;
  }
  return report;
}

namespace {

nlohmann::json opt_to_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> opt_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << *v;
  return os.str();
}

}  // namespace

nlohmann::json EvalReport::to_json() const {
  nlohmann::json components = nlohmann::json::array();
  for (std::size_t i = 0; i < component_names.size(); ++i) {
    const ConfusionCounts& c = counts[i];
    const DerivedRates& r = rates[i];
    components.push_back({{"name", component_names[i]},
                          {"tp", c.tp},
                          {"fn", c.fn},
                          {"fp", c.fp},
                          {"tn", c.tn},
                          {"tpr", opt_to_json(r.tpr)},
                          {"tnr", opt_to_json(r.tnr)},
                          {"ppv", opt_to_json(r.ppv)},
                          {"npv", opt_to_json(r.npv)},
                          {"accuracy", opt_to_json(r.accuracy)},
                          {"f1", opt_to_json(r.f1)}});
  }
  nlohmann::json j{{"components", components},
                   {"classification_accuracy_percent",
                    classification_accuracy_percent}};
  if (regression) {
    j["regression"] = {{"mse", regression->mse},
                       {"r2", regression->r2},
                       {"regression_accuracy_percent",
                        regression->regression_accuracy_percent}};
  }
  return j;
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport report;
  for (const auto& comp : j.at("components")) {
    report.component_names.push_back(comp.at("name").get<std::string>());
    ConfusionCounts c;
    c.tp = comp.at("tp").get<std::uint64_t>();
    c.fn = comp.at("fn").get<std::uint64_t>();
    c.fp = comp.at("fp").get<std::uint64_t>();
    c.tn = comp.at("tn").get<std::uint64_t>();
    report.counts.push_back(c);
    DerivedRates r;
    r.tpr = opt_from_json(comp.at("tpr"));
    r.tnr = opt_from_json(comp.at("tnr"));
    r.ppv = opt_from_json(comp.at("ppv"));
    r.npv = opt_from_json(comp.at("npv"));
    r.accuracy = opt_from_json(comp.at("accuracy"));
    r.f1 = opt_from_json(comp.at("f1"));
    report.rates.push_back(r);
  }
  report.classification_accuracy_percent =
      j.at("classification_accuracy_percent").get<double>();
  if (j.contains("regression")) {
    RegressionMetrics reg;
    reg.mse = j.at("regression").at("mse").get<double>();
    reg.r2 = j.at("regression").at("r2").get<double>();
    reg.regression_accuracy_percent =
        j.at("regression").at("regression_accuracy_percent").get<double>();
    report.regression = reg;
  }
  return report;
}

std::string EvalReport::to_text_table() const {
  std::ostringstream os;
  os << std::left << std::setw(12) << "Component" << std::right
     << std::setw(5) << "TP" << std::setw(5) << "FN" << std::setw(5) << "FP"
     << std::setw(5) << "TN" << std::setw(7) << "TPR" << std::setw(7) << "TNR"
     << std::setw(7) << "PPV" << std::setw(7) << "NPV" << std::setw(10)
     << "Accuracy" << std::setw(7) << "F1" << '\n';
  for (std::size_t i = 0; i < component_names.size(); ++i) {
    const ConfusionCounts& c = counts[i];
    const DerivedRates& r = rates[i];
    os << std::left << std::setw(12) << component_names[i] << std::right
       << std::setw(5) << c.tp << std::setw(5) << c.fn << std::setw(5) << c.fp
       << std::setw(5) << c.tn << std::setw(7) << fmt_opt(r.tpr)
       << std::setw(7) << fmt_opt(r.tnr) << std::setw(7) << fmt_opt(r.ppv)
       << std::setw(7) << fmt_opt(r.npv) << std::setw(10)
       << fmt_opt(r.accuracy) << std::setw(7) << fmt_opt(r.f1) << '\n';
  }
  os << '\n'
     << "multi-label classification accuracy: " << std::fixed
     << std::setprecision(2) << classification_accuracy_percent << "%\n";
  if (regression) {
    os << "regression MSE: " << std::setprecision(6) << regression->mse << '\n'
       << "regression R2: " << std::setprecision(4) << regression->r2 << '\n'
       << "regression accuracy: " << std::setprecision(2)
       << regression->regression_accuracy_percent << "%\n";
  }
  return os.str();
}

}  // namespace ramix
