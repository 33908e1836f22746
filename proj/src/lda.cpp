#include "maneuver/lda.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

Eigen::Matrix4d to_eigen(const Matrix4& m) {
  Eigen::Matrix4d out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m[r][c];
  return out;
}

Eigen::Vector4d to_eigen(const FeatureRow& v) { return Eigen::Vector4d(v[0], v[1], v[2], v[3]); }

double dot(const FeatureRow& a, const FeatureRow& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

FisherDirection fisher_direction(const Matrix4& within, const FeatureRow& mean_diff) {
  Eigen::Matrix4d sw = to_eigen(within);
  const Eigen::Vector4d diff = to_eigen(mean_diff);

  FisherDirection out;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(sw, Eigen::EigenvaluesOnly);
  const double max_ev = eig.eigenvalues().maxCoeff();
  const double min_ev = eig.eigenvalues().minCoeff();
  if (!(max_ev > 0.0) || min_ev <= 1e-12 * max_ev) {
    const double trace = sw.trace();
    out.ridge_applied = true;
    out.ridge_epsilon = trace > 0.0 ? 1e-6 * trace / 4.0 : 1e-6;
    sw += out.ridge_epsilon * Eigen::Matrix4d::Identity();
  }

  const Eigen::Vector4d w = sw.llt().solve(diff);
  const double norm = w.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegenerateClassMeans, "class means coincide; no discriminant direction");
  }
  for (int i = 0; i < 4; ++i) out.direction[static_cast<std::size_t>(i)] = w(i) / norm;
  return out;
}

double rayleigh_quotient(const FeatureRow& w, const Matrix4& between, const Matrix4& within) {
  const Eigen::Vector4d v = to_eigen(w);
  return v.dot(to_eigen(between) * v) / v.dot(to_eigen(within) * v);
}

LdaModel lda_fit(const Dataset& train) {
  const auto counts = train.class_counts();
  if (counts[0] < 2 || counts[1] < 2) {
    throw Error(ErrorCode::SingleClassTrain,
                fmt::format("lda needs >= 2 rows per class, got {} zeros and {} ones", counts[0], counts[1]));
  }

  LdaModel model;
  for (std::size_t i = 0; i < train.size(); ++i) {
    auto& mean = model.class_means[train.label(i)];
    for (std::size_t c = 0; c < kFeatureCount; ++c) mean[c] += train.row(i)[c];
  }
  for (int label = 0; label < 2; ++label) {
    for (double& v : model.class_means[label]) v /= static_cast<double>(counts[label]);
  }

  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto& mean = model.class_means[train.label(i)];
    FeatureRow centered{};
    for (std::size_t c = 0; c < kFeatureCount; ++c) centered[c] = train.row(i)[c] - mean[c];
    for (std::size_t r = 0; r < kFeatureCount; ++r)
      for (std::size_t c = 0; c < kFeatureCount; ++c) model.within_scatter[r][c] += centered[r] * centered[c];
  }

  FeatureRow diff{};
  for (std::size_t c = 0; c < kFeatureCount; ++c) diff[c] = model.class_means[1][c] - model.class_means[0][c];
  for (std::size_t r = 0; r < kFeatureCount; ++r)
    for (std::size_t c = 0; c < kFeatureCount; ++c) model.between_scatter[r][c] = diff[r] * diff[c];

  const FisherDirection fisher = fisher_direction(model.within_scatter, diff);
  model.direction = fisher.direction;
  model.ridge_applied = fisher.ridge_applied;
  model.ridge_epsilon = fisher.ridge_epsilon;

  double p0 = dot(model.direction, model.class_means[0]);
  double p1 = dot(model.direction, model.class_means[1]);
  if (p1 < p0) {
    for (double& w : model.direction) w = -w;
    p0 = -p0;
    p1 = -p1;
  }
  model.projected_threshold = 0.5 * (p0 + p1);
  return model;
}

double lda_margin(const LdaModel& model, const FeatureRow& row) {
  return dot(model.direction, row) - model.projected_threshold;
}

}  // namespace maneuver
