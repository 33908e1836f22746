#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "maneuver/features.hpp"

namespace maneuver {

// Class 1 is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  // Matrix with class 0 treated as positive.
  ConfusionMatrix swapped() const noexcept { return {tn, fn, tp, fp}; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// A ratio whose denominator may vanish. `degenerate` marks that case; the
// value is then the documented fallback.
struct Rate {
  double value = 0.0;
  bool degenerate = false;
};

// Throws LengthMismatch, EmptyInput.
ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);

// TP / (TP + FP) for `positive_class`; 0 when degenerate.
Rate precision(const ConfusionMatrix& cm, Label positive_class = 1);
// TP / (TP + FN) for `positive_class`; 0 when degenerate.
Rate recall(const ConfusionMatrix& cm, Label positive_class = 1);
// TN / (TN + FP); 0 when degenerate.
Rate specificity(const ConfusionMatrix& cm);
// 1 - specificity; 1 when degenerate.
Rate false_positive_rate(const ConfusionMatrix& cm);

enum class AverageMode { Macro, Weighted };

// Macro: unweighted mean. Weighted: support-proportional mean. Throws ZeroSupport
// when both supports are zero.
double averaged(std::array<double, 2> per_class, std::array<std::size_t, 2> supports, AverageMode mode);

// Harmonic mean 2pr / (p + r); 0 when p + r = 0.
double f1(double p, double r);
// TP / (TP + (FP + FN) / 2); 0 when the denominator vanishes.
double f1_from_matrix(const ConfusionMatrix& cm, Label positive_class = 1);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;

  bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
  std::vector<RocPoint> points;

  bool operator==(const RocCurve&) const = default;
};

// Points for the sentinel threshold (max score + 1) and every distinct score in
// descending order, predicting 1 iff score >= threshold. The curve therefore
// starts at (0, 0) and ends at (1, 1). Throws SingleClassTruth, LengthMismatch.
RocCurve roc(std::span<const Label> y_true, std::span<const double> scores);

// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

// Starts at (0,0), ends at (1,1), both coordinates non-decreasing, values in [0,1].
bool is_valid_roc(const RocCurve& curve);

}  // namespace maneuver
