#pragma once

#include <array>

#include "maneuver/dataset.hpp"

namespace maneuver {

using Matrix4 = std::array<FeatureRow, kFeatureCount>;  // row-major

struct FisherDirection {
  FeatureRow direction{};  // unit length
  bool ridge_applied = false;
  double ridge_epsilon = 0.0;
};

// Unit vector proportional to within^-1 * mean_diff. A singular `within` is
// replaced by within + eps*I with eps = 1e-6 * trace(within) / 4 (1e-6 when the
// trace is zero). Throws DegenerateClassMeans when the solution is zero.
FisherDirection fisher_direction(const Matrix4& within, const FeatureRow& mean_diff);

// w'Sb w / w'Sw w
double rayleigh_quotient(const FeatureRow& w, const Matrix4& between, const Matrix4& within);

struct LdaModel {
  FeatureRow direction{};
  std::array<FeatureRow, 2> class_means{};  // index = label
  double projected_threshold = 0.0;
  Matrix4 within_scatter{};
  Matrix4 between_scatter{};
  bool ridge_applied = false;
  double ridge_epsilon = 0.0;

  bool operator==(const LdaModel&) const = default;
};

// Two-class Fisher discriminant with a midpoint threshold (equal priors).
// Class 1 projects above the threshold. Needs >= 2 rows per class
// (SingleClassTrain otherwise).
LdaModel lda_fit(const Dataset& train);

// Signed distance of the projection from the threshold.
double lda_margin(const LdaModel& model, const FeatureRow& row);

}  // namespace maneuver
