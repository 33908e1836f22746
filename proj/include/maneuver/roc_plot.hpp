#pragma once

#include <span>
#include <string>

#include "maneuver/metrics.hpp"

namespace maneuver {

struct NamedCurve {
  std::string name;
  RocCurve curve;
};

struct RocPlot {
  std::string svg;
  std::string csv;  // algorithm,threshold,fpr,tpr
};

// Unit-square ROC chart: one polyline per curve, the red chance diagonal and a
// legend carrying each AUC. Output is byte-deterministic. Throws EmptyCurveSet.
RocPlot render_roc(std::span<const NamedCurve> curves);

}  // namespace maneuver
