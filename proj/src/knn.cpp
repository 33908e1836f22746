#include "maneuver/knn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "maneuver/error.hpp"

namespace maneuver {

double euclidean(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("euclidean: {} vs {} dimensions", p.size(), q.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

KnnModel knn_fit(const Dataset& train, int k) {
  if (k < 3 || k % 2 == 0 || static_cast<std::size_t>(k) > train.size()) {
    throw Error(ErrorCode::BadK,
                fmt::format("k={} must be odd, >= 3 and <= the {} training rows", k, train.size()));
  }
  return KnnModel{k, train.rows(), train.labels()};
}

double knn_score(const KnnModel& model, const FeatureRow& row) {
  const auto k = static_cast<std::size_t>(model.k);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(model.rows.size());
  for (std::size_t i = 0; i < model.rows.size(); ++i) dist.emplace_back(euclidean(model.rows[i], row), i);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t positive = 0;
  for (std::size_t i = 0; i < k; ++i) positive += model.labels[dist[i].second];
  return static_cast<double>(positive) / static_cast<double>(k);
}

}  // namespace maneuver
