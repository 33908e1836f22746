#include "maneuver/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include <fmt/format.h>

#include "maneuver/error.hpp"
#include "maneuver/logreg.hpp"

namespace maneuver {
namespace {

constexpr double kMinGain = 1e-12;
constexpr double kMinHessian = 1e-12;

double log_loss(std::span<const double> margins, const std::vector<Label>& labels) {
  double total = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double z = margins[i];
    total += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - static_cast<double>(labels[i]) * z;
  }
  return total / static_cast<double>(margins.size());
}

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double gain = kMinGain;
  std::size_t left_count = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, std::span<const double> residual, std::span<const double> hessian,
              const GbdtHyper& hyper)
      : data_(data), residual_(residual), hessian_(hessian), hyper_(hyper) {}

  RegressionTree build() {
    std::vector<std::size_t> all(data_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> indices, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});

    double sum_r = 0.0;
    double sum_h = 0.0;
    for (std::size_t i : indices) {
      sum_r += residual_[i];
      sum_h += hessian_[i];
    }
    const auto min_leaf = static_cast<std::size_t>(hyper_.min_samples_leaf);

    if (depth < hyper_.max_depth && indices.size() >= 2 * min_leaf) {
      const SplitCandidate best = find_split(indices, sum_r, min_leaf);
      if (best.feature >= 0) {
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t i : indices) {
          (data_.row(i)[static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();
        const int l = grow(std::move(left), depth + 1);
        const int r = grow(std::move(right), depth + 1);
        auto& node = tree_.nodes[static_cast<std::size_t>(id)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = l;
        node.right = r;
        return id;
      }
    }
    tree_.nodes[static_cast<std::size_t>(id)].value = sum_h < kMinHessian ? 0.0 : sum_r / sum_h;
    return id;
  }

  SplitCandidate find_split(const std::vector<std::size_t>& indices, double sum_r, std::size_t min_leaf) const {
    const std::size_t n = indices.size();
    const double parent = sum_r * sum_r / static_cast<double>(n);
    SplitCandidate best;
    std::vector<std::size_t> order(indices);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = data_.row(a)[f];
        const double vb = data_.row(b)[f];
        return va < vb || (va == vb && a < b);
      });
      double left_r = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        left_r += residual_[order[k - 1]];
        if (k < min_leaf || n - k < min_leaf) continue;
        const double lo = data_.row(order[k - 1])[f];
        const double hi = data_.row(order[k])[f];
        if (!(lo < hi)) continue;
        const double right_r = sum_r - left_r;
        const double gain = left_r * left_r / static_cast<double>(k) +
                            right_r * right_r / static_cast<double>(n - k) - parent;
        if (gain > best.gain) {
          double mid = lo + 0.5 * (hi - lo);
          if (!(mid < hi)) mid = lo;
          best = {static_cast<int>(f), mid, gain, k};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  std::span<const double> residual_;
  std::span<const double> hessian_;
  const GbdtHyper& hyper_;
  RegressionTree tree_;
};

}  // namespace

double RegressionTree::predict(const FeatureRow& row) const {
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& node = nodes[id];
    id = static_cast<std::size_t>(row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                                 : node.right);
  }
  return nodes[id].value;
}

int RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<std::size_t, int>> stack{{0, 0}};
  int deepest = 0;
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes[id].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes[id].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes[id].right), d + 1);
    }
  }
  return deepest;
}

void GbdtHyper::validate() const {
  if (n_trees < 0) throw Error(ErrorCode::InvalidConfig, "gbdt.n_trees must be non-negative");
  if (max_depth < 0) throw Error(ErrorCode::InvalidConfig, "gbdt.max_depth must be non-negative");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "gbdt.learning_rate must lie in (0, 1]");
  }
  if (min_samples_leaf < 1) throw Error(ErrorCode::InvalidConfig, "gbdt.min_samples_leaf must be >= 1");
}

GbdtModel gbdt_fit(const Dataset& train, const GbdtHyper& hyper) {
  hyper.validate();
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) {
    throw Error(ErrorCode::SingleClassTrain,
                fmt::format("gbdt needs both classes, got {} zeros and {} ones", counts[0], counts[1]));
  }

  GbdtModel model;
  model.learning_rate = hyper.learning_rate;
  model.max_depth = hyper.max_depth;
  model.n_trees = hyper.n_trees;
  model.min_samples_leaf = hyper.min_samples_leaf;
  model.base_score = std::log(static_cast<double>(counts[1]) / static_cast<double>(counts[0]));

  const std::size_t n = train.size();
  std::vector<double> margin(n, model.base_score);
  std::vector<double> residual(n);
  std::vector<double> hessian(n);
  model.training_curve.push_back(log_loss(margin, train.labels()));

  model.trees.reserve(static_cast<std::size_t>(hyper.n_trees));
  for (int t = 0; t < hyper.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(margin[i]);
      residual[i] = static_cast<double>(train.label(i)) - p;
      hessian[i] = p * (1.0 - p);
    }
    RegressionTree tree = TreeBuilder(train, residual, hessian, hyper).build();
    for (std::size_t i = 0; i < n; ++i) margin[i] += hyper.learning_rate * tree.predict(train.row(i));
    model.trees.push_back(std::move(tree));
    model.training_curve.push_back(log_loss(margin, train.labels()));
  }
  return model;
}

double gbdt_margin(const GbdtModel& model, const FeatureRow& row) {
  double margin = model.base_score;
  for (const auto& tree : model.trees) margin += model.learning_rate * tree.predict(row);
  return margin;
}

}  // namespace maneuver
