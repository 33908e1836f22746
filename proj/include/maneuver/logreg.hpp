#pragma once

#include <vector>

#include "maneuver/dataset.hpp"

namespace maneuver {

// Logistic function, evaluated without overflow. The result is clamped to the
// open interval (0, 1).
double sigmoid(double z);

struct LogRegHyper {
  double learning_rate = 0.1;
  int n_iters = 2000;
  double l2 = 0.0;

  void validate() const;
};

struct LogRegParams {
  double intercept = 0.0;
  FeatureRow weights{};

  bool operator==(const LogRegParams&) const = default;
};

struct LogRegModel {
  double intercept = 0.0;
  FeatureRow weights{};
  // Loss at the zero initialization followed by the loss after every update.
  std::vector<double> training_curve;

  bool operator==(const LogRegModel&) const = default;
};

// Mean binary cross-entropy plus l2/2 * |weights|^2 (the intercept is not penalized).
double logreg_loss(const LogRegParams& params, const Dataset& ds, double l2);
// Analytic gradient of logreg_loss.
LogRegParams logreg_gradient(const LogRegParams& params, const Dataset& ds, double l2);

// Full-batch gradient descent from zero. Throws SingleClassTrain, DivergenceDetected.
LogRegModel logreg_fit(const Dataset& train, const LogRegHyper& hyper);

double logreg_margin(const LogRegModel& model, const FeatureRow& row);

}  // namespace maneuver
