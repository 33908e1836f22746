#include "maneuver/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

double round4(double v) { return std::round(v * 1e4) / 1e4; }

double take(const Rate& rate, const char* name, std::vector<std::string>& degenerate) {
  if (rate.degenerate) degenerate.emplace_back(name);
  return rate.value;
}

}  // namespace

MetricsReport evaluate_scores(std::string algorithm, std::span<const Label> y_true, std::span<const double> scores,
                              const DecisionConfig& cfg) {
  cfg.validate();
  if (y_true.size() != scores.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} truths vs {} scores", y_true.size(), scores.size()));
  }
  std::vector<Label> y_pred;
  y_pred.reserve(scores.size());
  for (double s : scores) y_pred.push_back(label_from_score(s, cfg));

  MetricsReport r;
  r.algorithm = std::move(algorithm);
  r.decision_threshold = cfg.score_threshold;
  r.confusion = confusion(y_true, y_pred);
  r.support = {r.confusion.tn + r.confusion.fp, r.confusion.tp + r.confusion.fn};

  auto& deg = r.degenerate;
  r.precision_per_class = {take(precision(r.confusion, 0), "precision[0]", deg),
                           take(precision(r.confusion, 1), "precision[1]", deg)};
  r.recall_per_class = {take(recall(r.confusion, 0), "recall[0]", deg), take(recall(r.confusion, 1), "recall[1]", deg)};
  r.precision_macro = averaged(r.precision_per_class, r.support, AverageMode::Macro);
  r.precision_weighted = averaged(r.precision_per_class, r.support, AverageMode::Weighted);
  r.recall_macro = averaged(r.recall_per_class, r.support, AverageMode::Macro);
  r.recall_weighted = averaged(r.recall_per_class, r.support, AverageMode::Weighted);

  const std::array<double, 2> f1_per_class{f1_from_matrix(r.confusion, 0), f1_from_matrix(r.confusion, 1)};
  r.f1 = f1_per_class[1];
  r.f1_macro = averaged(f1_per_class, r.support, AverageMode::Macro);
  r.f1_weighted = averaged(f1_per_class, r.support, AverageMode::Weighted);
  r.specificity = take(specificity(r.confusion), "specificity", deg);
  r.fpr = take(false_positive_rate(r.confusion), "fpr", deg);

  r.roc = roc(y_true, scores);
  r.auc = auc(r.roc);
  return r;
}

std::vector<MetricsReport> build_report(std::span<const NamedModel> models, const Dataset& test,
                                        const DecisionConfig& cfg) {
  cfg.validate();
  if (test.empty()) throw Error(ErrorCode::EmptyInput, "empty test set");
  std::vector<MetricsReport> reports;
  reports.reserve(models.size());
  for (const auto& m : models) {
    std::vector<double> scores;
    scores.reserve(test.size());
    for (const auto& row : test.rows()) scores.push_back(m.bundle.score(row));
    reports.push_back(evaluate_scores(m.name, test.labels(), scores, cfg));
  }
  return reports;
}

std::string report_document(std::span<const MetricsReport> reports) {
  using nlohmann::json;
  json algorithms = json::array();
  for (const auto& r : reports) {
    const auto& cm = r.confusion;
    algorithms.push_back({
        {"algorithm", r.algorithm},
        {"decision_threshold", r.decision_threshold},
        {"confusion", {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}}},
        {"support", {{"0", r.support[0]}, {"1", r.support[1]}}},
        {"precision", {{"class_0", round4(r.precision_per_class[0])},
                       {"class_1", round4(r.precision_per_class[1])},
                       {"macro", round4(r.precision_macro)},
                       {"weighted", round4(r.precision_weighted)}}},
        {"recall", {{"class_0", round4(r.recall_per_class[0])},
                    {"class_1", round4(r.recall_per_class[1])},
                    {"macro", round4(r.recall_macro)},
                    {"weighted", round4(r.recall_weighted)}}},
        {"f1", round4(r.f1)},
        {"f1_macro", round4(r.f1_macro)},
        {"f1_weighted", round4(r.f1_weighted)},
        {"specificity", round4(r.specificity)},
        {"fpr", round4(r.fpr)},
        {"auc", round4(r.auc)},
        {"roc_points", r.roc.points.size()},
        {"degenerate", r.degenerate},
    });
  }
  json doc{{"schema_version", kReportSchemaVersion}, {"algorithms", algorithms}};
  return doc.dump(2) + "\n";
}

std::string summary_table(std::span<const MetricsReport> reports) {
  std::vector<const MetricsReport*> sorted;
  for (const auto& r : reports) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const MetricsReport* a, const MetricsReport* b) {
    if (a->f1 != b->f1) return a->f1 > b->f1;
    return a->algorithm < b->algorithm;
  });

  auto pct = [](double v) { return fmt::format("{:.1f}%", 100.0 * v); };
  std::string out = fmt::format("{:<10} {:>9} {:>9} {:>9} {:>9} {:>8} {:>8} {:>8} {:>8}\n", "algorithm", "P macro",
                                "P wtd", "R macro", "R wtd", "F1", "spec", "FPR", "AUC");
  for (const auto* r : sorted) {
    out += fmt::format("{:<10} {:>9} {:>9} {:>9} {:>9} {:>8} {:>8} {:>8} {:>8.4f}\n", r->algorithm,
                       pct(r->precision_macro), pct(r->precision_weighted), pct(r->recall_macro),
                       pct(r->recall_weighted), pct(r->f1), pct(r->specificity), pct(r->fpr), r->auc);
  }
  return out;
}

}  // namespace maneuver
