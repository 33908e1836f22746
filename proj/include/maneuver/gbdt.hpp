#pragma once

#include <vector>

#include "maneuver/dataset.hpp"

namespace maneuver {

struct GbdtHyper {
  int n_trees = 100;
  int max_depth = 3;
  double learning_rate = 0.1;
  int min_samples_leaf = 2;

  void validate() const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // rows with x[feature] <= threshold go left
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf output (margin units, before the learning rate)

  bool is_leaf() const noexcept { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(const FeatureRow& row) const;
  int depth() const;
  bool operator==(const RegressionTree&) const = default;
};

struct GbdtModel {
  double base_score = 0.0;  // log-odds of the training positive rate
  std::vector<RegressionTree> trees;
  double learning_rate = 0.1;
  int max_depth = 3;
  int n_trees = 0;
  int min_samples_leaf = 2;
  // Training log-loss at the base score followed by the loss after each tree.
  std::vector<double> training_curve;

  bool operator==(const GbdtModel&) const = default;
};

// Stagewise boosting on logistic loss: each tree is grown on the residuals
// y - p by exhaustive midpoint scan (ties go to the lowest feature index, then
// the lowest threshold), and its leaves take the one-step Newton value
// sum(residual) / sum(p(1-p)), or 0 when that denominator vanishes.
// Throws SingleClassTrain.
GbdtModel gbdt_fit(const Dataset& train, const GbdtHyper& hyper);

double gbdt_margin(const GbdtModel& model, const FeatureRow& row);

}  // namespace maneuver
