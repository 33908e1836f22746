#pragma once

#include <span>
#include <vector>

#include "maneuver/dataset.hpp"

namespace maneuver {

struct KnnModel {
  int k = 5;
  std::vector<FeatureRow> rows;
  std::vector<Label> labels;

  bool operator==(const KnnModel&) const = default;
};

// Throws DimensionMismatch when p and q differ in length.
double euclidean(std::span<const double> p, std::span<const double> q);

// Stores the training set. k must be odd, at least 3 and at most the row count
// (BadK otherwise).
KnnModel knn_fit(const Dataset& train, int k);

// Fraction of positive labels among the k nearest stored rows. Equal distances
// are ordered by stored row index.
double knn_score(const KnnModel& model, const FeatureRow& row);

}  // namespace maneuver
