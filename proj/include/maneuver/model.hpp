#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "maneuver/dataset.hpp"
#include "maneuver/gbdt.hpp"
#include "maneuver/knn.hpp"
#include "maneuver/lda.hpp"
#include "maneuver/logreg.hpp"

namespace maneuver {

enum class Algorithm { LogReg, Knn, Lda, Gbdt };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{Algorithm::LogReg, Algorithm::Knn, Algorithm::Lda,
                                                         Algorithm::Gbdt};

std::string_view algorithm_tag(Algorithm algorithm);  // logreg | knn | lda | gbdt
Algorithm parse_algorithm(std::string_view tag);       // UnknownAlgorithmTag

using TrainedModel = std::variant<LogRegModel, KnnModel, LdaModel, GbdtModel>;

Algorithm algorithm_of(const TrainedModel& model);

struct DecisionConfig {
  double score_threshold = 0.5;

  void validate() const;
};

// Score in [0, 1]: sigmoid of the margin for logreg, LDA and GBDT; positive
// neighbour fraction for KNN. `row` must have kFeatureCount entries
// (DimensionMismatch otherwise).
double predict_score(const TrainedModel& model, std::span<const double> row);

// 1 iff score >= threshold.
Label label_from_score(double score, const DecisionConfig& cfg);
Label predict_label(const TrainedModel& model, std::span<const double> row, const DecisionConfig& cfg);

// A fitted model plus the standardization it was trained under. Scores taken
// through the bundle accept raw feature rows.
struct ModelBundle {
  TrainedModel model;
  std::optional<ScalerParams> scaler;

  double score(const FeatureRow& raw_row) const;
  Algorithm algorithm() const { return algorithm_of(model); }
};

inline constexpr int kModelSchemaVersion = 1;

// Versioned JSON document. load_model(save_model(b)) scores bit-identically.
std::string save_model(const ModelBundle& bundle);
// Throws SchemaVersionMismatch, UnknownAlgorithmTag, ModelFormatError.
ModelBundle load_model(std::string_view document);

}  // namespace maneuver
