#include "maneuver/model.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

using nlohmann::json;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

json row_json(const FeatureRow& row) { return json(std::vector<double>(row.begin(), row.end())); }

FeatureRow row_from(const json& j) {
  if (!j.is_array() || j.size() != kFeatureCount) {
    throw Error(ErrorCode::ModelFormatError, fmt::format("expected an array of {} numbers", kFeatureCount));
  }
  FeatureRow row{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    row[i] = j.at(i).get<double>();
    if (!std::isfinite(row[i])) throw Error(ErrorCode::ModelFormatError, "non-finite number");
  }
  return row;
}

json matrix_json(const Matrix4& m) {
  json out = json::array();
  for (const auto& r : m) out.push_back(row_json(r));
  return out;
}

Matrix4 matrix_from(const json& j) {
  if (!j.is_array() || j.size() != kFeatureCount) throw Error(ErrorCode::ModelFormatError, "expected a 4x4 matrix");
  Matrix4 m{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) m[i] = row_from(j.at(i));
  return m;
}

json to_json(const LogRegModel& m) {
  return {{"intercept", m.intercept}, {"weights", row_json(m.weights)}, {"training_curve", m.training_curve}};
}

json to_json(const KnnModel& m) {
  json rows = json::array();
  for (const auto& r : m.rows) rows.push_back(row_json(r));
  std::vector<int> labels(m.labels.begin(), m.labels.end());
  return {{"k", m.k}, {"rows", rows}, {"labels", labels}};
}

json to_json(const LdaModel& m) {
  return {{"direction", row_json(m.direction)},
          {"class_means", {row_json(m.class_means[0]), row_json(m.class_means[1])}},
          {"projected_threshold", m.projected_threshold},
          {"within_scatter", matrix_json(m.within_scatter)},
          {"between_scatter", matrix_json(m.between_scatter)},
          {"ridge_applied", m.ridge_applied},
          {"ridge_epsilon", m.ridge_epsilon}};
}

json to_json(const GbdtModel& m) {
  json trees = json::array();
  for (const auto& tree : m.trees) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
      if (n.is_leaf()) {
        nodes.push_back({{"leaf", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
      }
    }
    trees.push_back(std::move(nodes));
  }
  return {{"base_score", m.base_score},       {"learning_rate", m.learning_rate},
          {"max_depth", m.max_depth},         {"n_trees", m.n_trees},
          {"min_samples_leaf", m.min_samples_leaf}, {"trees", trees},
          {"training_curve", m.training_curve}};
}

LogRegModel logreg_from(const json& j) {
  LogRegModel m;
  m.intercept = j.at("intercept").get<double>();
  m.weights = row_from(j.at("weights"));
  m.training_curve = j.at("training_curve").get<std::vector<double>>();
  return m;
}

KnnModel knn_from(const json& j) {
  KnnModel m;
  m.k = j.at("k").get<int>();
  for (const auto& r : j.at("rows")) m.rows.push_back(row_from(r));
  for (int y : j.at("labels").get<std::vector<int>>()) {
    if (y != 0 && y != 1) throw Error(ErrorCode::ModelFormatError, "knn label outside {0, 1}");
    m.labels.push_back(static_cast<Label>(y));
  }
  if (m.rows.size() != m.labels.size() || m.k < 3 || m.k % 2 == 0 || static_cast<std::size_t>(m.k) > m.rows.size()) {
    throw Error(ErrorCode::ModelFormatError, "inconsistent knn model");
  }
  return m;
}

LdaModel lda_from(const json& j) {
  LdaModel m;
  m.direction = row_from(j.at("direction"));
  const auto& means = j.at("class_means");
  if (!means.is_array() || means.size() != 2) throw Error(ErrorCode::ModelFormatError, "lda needs two class means");
  m.class_means = {row_from(means.at(0)), row_from(means.at(1))};
  m.projected_threshold = j.at("projected_threshold").get<double>();
  m.within_scatter = matrix_from(j.at("within_scatter"));
  m.between_scatter = matrix_from(j.at("between_scatter"));
  m.ridge_applied = j.at("ridge_applied").get<bool>();
  m.ridge_epsilon = j.at("ridge_epsilon").get<double>();
  return m;
}

GbdtModel gbdt_from(const json& j) {
  GbdtModel m;
  m.base_score = j.at("base_score").get<double>();
  m.learning_rate = j.at("learning_rate").get<double>();
  m.max_depth = j.at("max_depth").get<int>();
  m.n_trees = j.at("n_trees").get<int>();
  m.min_samples_leaf = j.at("min_samples_leaf").get<int>();
  m.training_curve = j.at("training_curve").get<std::vector<double>>();
  for (const auto& jt : j.at("trees")) {
    RegressionTree tree;
    for (const auto& jn : jt) {
      TreeNode node;
      if (jn.contains("leaf")) {
        node.value = jn.at("leaf").get<double>();
        if (!std::isfinite(node.value)) throw Error(ErrorCode::ModelFormatError, "non-finite leaf value");
      } else {
        node.feature = jn.at("feature").get<int>();
        node.threshold = jn.at("threshold").get<double>();
        node.left = jn.at("left").get<int>();
        node.right = jn.at("right").get<int>();
      }
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) throw Error(ErrorCode::ModelFormatError, "empty tree");
    // Children must point forward so traversal always terminates.
    const int size = static_cast<int>(tree.nodes.size());
    for (int id = 0; id < size; ++id) {
      const auto& n = tree.nodes[static_cast<std::size_t>(id)];
      if (n.is_leaf()) continue;
      if (n.feature >= static_cast<int>(kFeatureCount) || n.left <= id || n.right <= id || n.left >= size ||
          n.right >= size) {
        throw Error(ErrorCode::ModelFormatError, "malformed tree node");
      }
    }
    m.trees.push_back(std::move(tree));
  }
  if (m.trees.size() > static_cast<std::size_t>(std::max(m.n_trees, 0))) {
    throw Error(ErrorCode::ModelFormatError, "more trees than n_trees");
  }
  return m;
}

}  // namespace

std::string_view algorithm_tag(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::LogReg: return "logreg";
    case Algorithm::Knn: return "knn";
    case Algorithm::Lda: return "lda";
    case Algorithm::Gbdt: return "gbdt";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view tag) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_tag(a) == tag) return a;
  }
  throw Error(ErrorCode::UnknownAlgorithmTag, fmt::format("unknown algorithm '{}'", tag));
}

Algorithm algorithm_of(const TrainedModel& model) {
  return std::visit(Overloaded{[](const LogRegModel&) { return Algorithm::LogReg; },
                               [](const KnnModel&) { return Algorithm::Knn; },
                               [](const LdaModel&) { return Algorithm::Lda; },
                               [](const GbdtModel&) { return Algorithm::Gbdt; }},
                    model);
}

void DecisionConfig::validate() const {
  if (!(score_threshold > 0.0 && score_threshold < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "decision.score_threshold must lie in (0, 1)");
  }
}

double predict_score(const TrainedModel& model, std::span<const double> row) {
  if (row.size() != kFeatureCount) {
    throw Error(ErrorCode::DimensionMismatch, fmt::format("expected {} features, got {}", kFeatureCount, row.size()));
  }
  FeatureRow r{};
  std::copy(row.begin(), row.end(), r.begin());
  return std::visit(Overloaded{[&](const LogRegModel& m) { return sigmoid(logreg_margin(m, r)); },
                               [&](const KnnModel& m) { return knn_score(m, r); },
                               [&](const LdaModel& m) { return sigmoid(lda_margin(m, r)); },
                               [&](const GbdtModel& m) { return sigmoid(gbdt_margin(m, r)); }},
                    model);
}

Label label_from_score(double score, const DecisionConfig& cfg) { return score >= cfg.score_threshold ? 1 : 0; }

Label predict_label(const TrainedModel& model, std::span<const double> row, const DecisionConfig& cfg) {
  return label_from_score(predict_score(model, row), cfg);
}

double ModelBundle::score(const FeatureRow& raw_row) const {
  return predict_score(model, scaler ? scaler->apply(raw_row) : raw_row);
}

std::string save_model(const ModelBundle& bundle) {
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["algorithm"] = std::string(algorithm_tag(bundle.algorithm()));
  doc["model"] = std::visit([](const auto& m) { return to_json(m); }, bundle.model);
  if (bundle.scaler) {
    const auto& s = *bundle.scaler;
    doc["scaler"] = {{"means", row_json(s.means)},
                     {"std_devs", row_json(s.std_devs)},
                     {"constant_columns", s.constant_columns}};
  } else {
    doc["scaler"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

ModelBundle load_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ModelFormatError, fmt::format("not a JSON document: {}", e.what()));
  }
  try {
    if (!doc.is_object() || !doc.contains("schema_version")) {
      throw Error(ErrorCode::ModelFormatError, "missing schema_version");
    }
    const int version = doc.at("schema_version").get<int>();
    if (version != kModelSchemaVersion) {
      throw Error(ErrorCode::SchemaVersionMismatch,
                  fmt::format("model schema version {} is not supported (expected {})", version, kModelSchemaVersion));
    }
    const Algorithm algorithm = parse_algorithm(doc.at("algorithm").get<std::string>());
    const json& body = doc.at("model");
    ModelBundle bundle{LogRegModel{}, std::nullopt};
    switch (algorithm) {
      case Algorithm::LogReg: bundle.model = logreg_from(body); break;
      case Algorithm::Knn: bundle.model = knn_from(body); break;
      case Algorithm::Lda: bundle.model = lda_from(body); break;
      case Algorithm::Gbdt: bundle.model = gbdt_from(body); break;
    }
    const json& scaler = doc.at("scaler");
    if (!scaler.is_null()) {
      ScalerParams s;
      s.means = row_from(scaler.at("means"));
      s.std_devs = row_from(scaler.at("std_devs"));
      s.constant_columns = scaler.at("constant_columns").get<std::vector<std::size_t>>();
      for (double sd : s.std_devs) {
        if (!(sd > 0.0)) throw Error(ErrorCode::ModelFormatError, "scaler std_dev must be positive");
      }
      bundle.scaler = s;
    }
    return bundle;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ModelFormatError, fmt::format("malformed model document: {}", e.what()));
  }
}

}  // namespace maneuver
