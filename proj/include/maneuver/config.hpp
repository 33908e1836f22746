#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "maneuver/dataset.hpp"
#include "maneuver/features.hpp"
#include "maneuver/gbdt.hpp"
#include "maneuver/logreg.hpp"
#include "maneuver/model.hpp"
#include "maneuver/trajectory_io.hpp"

namespace maneuver {

struct PathsConfig {
  std::filesystem::path corpus_dir = "corpus";
  std::filesystem::path dataset_file = "dataset.csv";
  std::filesystem::path model_dir = "models";
  std::filesystem::path report_dir = "report";
};

struct SynthSettings {
  SynthConfig trajectory;
  std::size_t count = 200;
};

// Every tunable constant of the pipeline. Member initializers are the defaults.
struct RunConfig {
  FeatureConfig feature;
  SplitSpec split;
  DecisionConfig decision;
  LogRegHyper logreg;
  int knn_k = 5;
  GbdtHyper gbdt;
  SynthSettings synth;
  bool skip_invalid_files = false;
  PathsConfig paths;

  void validate() const;  // InvalidConfig
};

// Returns the value of an environment variable, if set.
using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;
EnvLookup process_environment();

inline constexpr std::string_view kEnvPrefix = "MANEUVER_";

// Default configuration as a JSON document (maneuver_threshold is null).
std::string default_config_text();

// Strict parse: unknown keys and wrongly typed values raise InvalidConfig.
// Missing keys keep their defaults. The result is not yet validated.
RunConfig parse_config(std::string_view json_text);

// Layers, lowest precedence first: defaults, the config file, environment
// variables MANEUVER_<SECTION>_<KEY>, then `overrides` of the form
// `section.key=value`. The result is validated.
RunConfig resolve_config(const std::optional<std::filesystem::path>& file, std::span<const std::string> overrides,
                         const EnvLookup& env);

}  // namespace maneuver
