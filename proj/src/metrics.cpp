#include "maneuver/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

Rate ratio(std::size_t num, std::size_t den, double fallback) {
  if (den == 0) return {fallback, true};
  return {static_cast<double>(num) / static_cast<double>(den), false};
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} truths vs {} predictions", y_true.size(), y_pred.size()));
  }
  if (y_true.empty()) throw Error(ErrorCode::EmptyInput, "confusion matrix of zero samples");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 1) {
      (y_pred[i] == 1 ? cm.tp : cm.fn) += 1;
    } else {
      (y_pred[i] == 1 ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

Rate precision(const ConfusionMatrix& cm, Label positive_class) {
  const ConfusionMatrix m = positive_class == 1 ? cm : cm.swapped();
  return ratio(m.tp, m.tp + m.fp, 0.0);
}

Rate recall(const ConfusionMatrix& cm, Label positive_class) {
  const ConfusionMatrix m = positive_class == 1 ? cm : cm.swapped();
  return ratio(m.tp, m.tp + m.fn, 0.0);
}

Rate specificity(const ConfusionMatrix& cm) { return ratio(cm.tn, cm.tn + cm.fp, 0.0); }

Rate false_positive_rate(const ConfusionMatrix& cm) {
  const Rate s = specificity(cm);
  if (s.degenerate) return {1.0, true};
  return {1.0 - s.value, false};
}

double averaged(std::array<double, 2> per_class, std::array<std::size_t, 2> supports, AverageMode mode) {
  const std::size_t total = supports[0] + supports[1];
  if (total == 0) throw Error(ErrorCode::ZeroSupport, "both class supports are zero");
  if (mode == AverageMode::Macro) return 0.5 * (per_class[0] + per_class[1]);
  return (per_class[0] * static_cast<double>(supports[0]) + per_class[1] * static_cast<double>(supports[1])) /
         static_cast<double>(total);
}

double f1(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double f1_from_matrix(const ConfusionMatrix& cm, Label positive_class) {
  const ConfusionMatrix m = positive_class == 1 ? cm : cm.swapped();
  const double den = static_cast<double>(m.tp) + 0.5 * static_cast<double>(m.fp + m.fn);
  if (den == 0.0) return 0.0;
  return static_cast<double>(m.tp) / den;
}

RocCurve roc(std::span<const Label> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("{} truths vs {} scores", y_true.size(), scores.size()));
  }
  const std::size_t positives = static_cast<std::size_t>(std::count(y_true.begin(), y_true.end(), Label{1}));
  const std::size_t negatives = y_true.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::SingleClassTruth, "ROC needs both classes in the ground truth");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const double pos = static_cast<double>(positives);
  const double neg = static_cast<double>(negatives);
  RocCurve curve;
  curve.points.push_back({0.0, 0.0, scores[order.front()] + 1.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    // Everything scoring >= s is predicted positive.
    while (i < order.size() && scores[order[i]] == s) {
      (y_true[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / neg, static_cast<double>(tp) / pos, s});
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return area;
}

bool is_valid_roc(const RocCurve& curve) {
  const auto& p = curve.points;
  if (p.size() < 2) return false;
  if (p.front().fpr != 0.0 || p.front().tpr != 0.0 || p.back().fpr != 1.0 || p.back().tpr != 1.0) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].fpr < 0.0 || p[i].fpr > 1.0 || p[i].tpr < 0.0 || p[i].tpr > 1.0) return false;
    if (i > 0 && (p[i].fpr < p[i - 1].fpr || p[i].tpr < p[i - 1].tpr)) return false;
  }
  return true;
}

}  // namespace maneuver
