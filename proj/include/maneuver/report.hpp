#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "maneuver/dataset.hpp"
#include "maneuver/metrics.hpp"
#include "maneuver/model.hpp"

namespace maneuver {

struct MetricsReport {
  std::string algorithm;
  double decision_threshold = 0.5;
  ConfusionMatrix confusion;
  std::array<std::size_t, 2> support{};  // true-class counts, index = label
  std::array<double, 2> precision_per_class{};
  std::array<double, 2> recall_per_class{};
  double precision_macro = 0.0;
  double precision_weighted = 0.0;
  double recall_macro = 0.0;
  double recall_weighted = 0.0;
  double f1 = 0.0;  // positive class
  double f1_macro = 0.0;
  double f1_weighted = 0.0;
  double specificity = 0.0;
  double fpr = 0.0;
  double auc = 0.0;
  RocCurve roc;
  // Names of metrics that hit a zero denominator, e.g. "precision[1]".
  std::vector<std::string> degenerate;

  bool operator==(const MetricsReport&) const = default;
};

// Full metric set for one score vector against ground truth.
MetricsReport evaluate_scores(std::string algorithm, std::span<const Label> y_true, std::span<const double> scores,
                              const DecisionConfig& cfg);

struct NamedModel {
  std::string name;
  ModelBundle bundle;
};

// One report per model, in input order. `test` holds raw (unscaled) features.
std::vector<MetricsReport> build_report(std::span<const NamedModel> models, const Dataset& test,
                                        const DecisionConfig& cfg);

inline constexpr int kReportSchemaVersion = 1;

// Versioned JSON; scalars rounded to 4 decimal places.
std::string report_document(std::span<const MetricsReport> reports);
// Comparison table sorted by F1 (descending), percentages.
std::string summary_table(std::span<const MetricsReport> reports);

}  // namespace maneuver
