#include "maneuver/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

double linear(double intercept, const FeatureRow& weights, const FeatureRow& row) {
  double z = intercept;
  for (std::size_t c = 0; c < kFeatureCount; ++c) z += weights[c] * row[c];
  return z;
}

// log(1 + e^z)
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

}  // namespace

double sigmoid(double z) {
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  double s;
  if (z >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    s = e / (1.0 + e);
  }
  return std::clamp(s, lo, hi);
}

void LogRegHyper::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::InvalidConfig, "logreg.learning_rate must be positive");
  }
  if (n_iters < 0) throw Error(ErrorCode::InvalidConfig, "logreg.n_iters must be non-negative");
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw Error(ErrorCode::InvalidConfig, "logreg.l2 must be non-negative");
}

double logreg_loss(const LogRegParams& params, const Dataset& ds, double l2) {
  double total = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double z = linear(params.intercept, params.weights, ds.row(i));
    total += softplus(z) - static_cast<double>(ds.label(i)) * z;
  }
  double penalty = 0.0;
  for (double w : params.weights) penalty += w * w;
  return total / static_cast<double>(ds.size()) + 0.5 * l2 * penalty;
}

LogRegParams logreg_gradient(const LogRegParams& params, const Dataset& ds, double l2) {
  LogRegParams grad;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& row = ds.row(i);
    const double residual = sigmoid(linear(params.intercept, params.weights, row)) - static_cast<double>(ds.label(i));
    grad.intercept += residual;
    for (std::size_t c = 0; c < kFeatureCount; ++c) grad.weights[c] += residual * row[c];
  }
  const double inv_n = 1.0 / static_cast<double>(ds.size());
  grad.intercept *= inv_n;
  for (std::size_t c = 0; c < kFeatureCount; ++c) grad.weights[c] = grad.weights[c] * inv_n + l2 * params.weights[c];
  return grad;
}

LogRegModel logreg_fit(const Dataset& train, const LogRegHyper& hyper) {
  hyper.validate();
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) {
    throw Error(ErrorCode::SingleClassTrain,
                fmt::format("logreg needs both classes, got {} zeros and {} ones", counts[0], counts[1]));
  }

  LogRegParams params;
  LogRegModel model;
  model.training_curve.reserve(static_cast<std::size_t>(hyper.n_iters) + 1);
  model.training_curve.push_back(logreg_loss(params, train, hyper.l2));
  for (int iter = 0; iter < hyper.n_iters; ++iter) {
    const LogRegParams grad = logreg_gradient(params, train, hyper.l2);
    params.intercept -= hyper.learning_rate * grad.intercept;
    for (std::size_t c = 0; c < kFeatureCount; ++c) params.weights[c] -= hyper.learning_rate * grad.weights[c];
    const double loss = logreg_loss(params, train, hyper.l2);
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::DivergenceDetected, fmt::format("loss became {} at iteration {}", loss, iter + 1));
    }
    model.training_curve.push_back(loss);
  }
  model.intercept = params.intercept;
  model.weights = params.weights;
  return model;
}

double logreg_margin(const LogRegModel& model, const FeatureRow& row) {
  return linear(model.intercept, model.weights, row);
}

}  // namespace maneuver
