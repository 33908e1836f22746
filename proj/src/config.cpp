#include "maneuver/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <type_traits>

#include <fmt/format.h>
#include <json.hpp>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

using nlohmann::json;

json to_json(const RunConfig& c) {
  const auto& f = c.feature;
  const auto& t = c.synth.trajectory;
  json threshold = f.maneuver_threshold > 0.0 ? json(f.maneuver_threshold) : json(nullptr);
  return {
      {"feature",
       {{"speed_scale", f.speed_scale},
        {"maneuver_threshold", threshold},
        {"accel_diff_order", f.accel_diff_order},
        {"time_aware_acceleration", f.time_aware_acceleration},
        {"label_source", f.label_source == LabelSource::Altitude ? "altitude" : "differenced_altitude"}}},
      {"split", {{"test_fraction", c.split.test_fraction}, {"seed", c.split.seed}, {"stratified", c.split.stratified}}},
      {"decision", {{"score_threshold", c.decision.score_threshold}}},
      {"logreg", {{"learning_rate", c.logreg.learning_rate}, {"n_iters", c.logreg.n_iters}, {"l2", c.logreg.l2}}},
      {"knn", {{"k", c.knn_k}}},
      {"lda", json::object()},
      {"gbdt",
       {{"n_trees", c.gbdt.n_trees},
        {"max_depth", c.gbdt.max_depth},
        {"learning_rate", c.gbdt.learning_rate},
        {"min_samples_leaf", c.gbdt.min_samples_leaf}}},
      {"synth",
       {{"count", c.synth.count},
        {"n_points", t.n_points},
        {"maneuver_fraction", t.maneuver_fraction},
        {"altitude_peak_range", {t.altitude_peak_range.first, t.altitude_peak_range.second}},
        {"noise_scale", t.noise_scale},
        {"cruise_altitude", t.cruise_altitude},
        {"seed", t.seed}}},
      {"corpus", {{"skip_invalid_files", c.skip_invalid_files}}},
      {"paths",
       {{"corpus_dir", c.paths.corpus_dir.string()},
        {"dataset_file", c.paths.dataset_file.string()},
        {"model_dir", c.paths.model_dir.string()},
        {"report_dir", c.paths.report_dir.string()}}},
  };
}

void reject_unknown_keys(const json& doc, const json& schema, const std::string& where) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, fmt::format("{} must be an object", where));
  for (const auto& [key, value] : doc.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!schema.contains(key)) throw Error(ErrorCode::InvalidConfig, fmt::format("unknown config key '{}'", path));
    if (schema.at(key).is_object()) reject_unknown_keys(value, schema.at(key), path);
  }
}

template <class T>
void read(const json& section, const char* key, T& out, const std::string& where) {
  if (!section.contains(key)) return;
  const json& value = section.at(key);
  bool type_ok = true;
  if constexpr (std::is_same_v<T, bool>) {
    type_ok = value.is_boolean();
  } else if constexpr (std::is_unsigned_v<T>) {
    type_ok = value.is_number_unsigned();
  } else if constexpr (std::is_integral_v<T>) {
    type_ok = value.is_number_integer();
  } else if constexpr (std::is_floating_point_v<T>) {
    type_ok = value.is_number();
  }
  if (!type_ok) throw Error(ErrorCode::InvalidConfig, fmt::format("config key '{}.{}' has the wrong type", where, key));
  try {
    out = section.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("config key '{}.{}' has the wrong type", where, key));
  }
}

void read_path(const json& section, const char* key, std::filesystem::path& out) {
  std::string text = out.string();
  read(section, key, text, "paths");
  out = text;
}

RunConfig from_json(const json& doc) {
  reject_unknown_keys(doc, to_json(RunConfig{}), "");
  RunConfig c;
  auto section = [&](const char* name) -> json { return doc.contains(name) ? doc.at(name) : json::object(); };

  const json f = section("feature");
  read(f, "speed_scale", c.feature.speed_scale, "feature");
  if (f.contains("maneuver_threshold") && !f.at("maneuver_threshold").is_null()) {
    read(f, "maneuver_threshold", c.feature.maneuver_threshold, "feature");
  }
  read(f, "accel_diff_order", c.feature.accel_diff_order, "feature");
  read(f, "time_aware_acceleration", c.feature.time_aware_acceleration, "feature");
  std::string source = "altitude";
  read(f, "label_source", source, "feature");
  if (source == "altitude") {
    c.feature.label_source = LabelSource::Altitude;
  } else if (source == "differenced_altitude") {
    c.feature.label_source = LabelSource::DifferencedAltitude;
  } else {
    throw Error(ErrorCode::InvalidConfig,
                fmt::format("feature.label_source '{}' must be 'altitude' or 'differenced_altitude'", source));
  }

  const json s = section("split");
  read(s, "test_fraction", c.split.test_fraction, "split");
  read(s, "seed", c.split.seed, "split");
  read(s, "stratified", c.split.stratified, "split");

  read(section("decision"), "score_threshold", c.decision.score_threshold, "decision");

  const json lr = section("logreg");
  read(lr, "learning_rate", c.logreg.learning_rate, "logreg");
  read(lr, "n_iters", c.logreg.n_iters, "logreg");
  read(lr, "l2", c.logreg.l2, "logreg");

  read(section("knn"), "k", c.knn_k, "knn");

  const json g = section("gbdt");
  read(g, "n_trees", c.gbdt.n_trees, "gbdt");
  read(g, "max_depth", c.gbdt.max_depth, "gbdt");
  read(g, "learning_rate", c.gbdt.learning_rate, "gbdt");
  read(g, "min_samples_leaf", c.gbdt.min_samples_leaf, "gbdt");

  const json sy = section("synth");
  auto& t = c.synth.trajectory;
  read(sy, "count", c.synth.count, "synth");
  read(sy, "n_points", t.n_points, "synth");
  read(sy, "maneuver_fraction", t.maneuver_fraction, "synth");
  if (sy.contains("altitude_peak_range")) {
    std::vector<double> range;
    read(sy, "altitude_peak_range", range, "synth");
    if (range.size() != 2) throw Error(ErrorCode::InvalidConfig, "synth.altitude_peak_range must be [low, high]");
    t.altitude_peak_range = {range[0], range[1]};
  }
  read(sy, "noise_scale", t.noise_scale, "synth");
  read(sy, "cruise_altitude", t.cruise_altitude, "synth");
  read(sy, "seed", t.seed, "synth");

  read(section("corpus"), "skip_invalid_files", c.skip_invalid_files, "corpus");

  const json p = section("paths");
  read_path(p, "corpus_dir", c.paths.corpus_dir);
  read_path(p, "dataset_file", c.paths.dataset_file);
  read_path(p, "model_dir", c.paths.model_dir);
  read_path(p, "report_dir", c.paths.report_dir);
  return c;
}

std::string upper(std::string_view text) {
  std::string out(text);
  for (char& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Interprets `text` according to the JSON type of the default at that key.
json override_value(const json& default_value, const std::string& text) {
  if (default_value.is_string()) return text;
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return text;  // rejected later by the typed read
  }
}

void apply_override(json& doc, const json& schema, const std::string& section, const std::string& key,
                    const std::string& text) {
  if (!schema.contains(section) || !schema.at(section).is_object() || !schema.at(section).contains(key)) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("unknown config key '{}.{}'", section, key));
  }
  doc[section][key] = override_value(schema.at(section).at(key), text);
}

}  // namespace

void RunConfig::validate() const {
  feature.validate();
  split.validate();
  decision.validate();
  logreg.validate();
  if (knn_k < 3 || knn_k % 2 == 0) throw Error(ErrorCode::InvalidConfig, "knn.k must be odd and >= 3");
  gbdt.validate();
  synth.trajectory.validate();
  if (synth.count == 0) throw Error(ErrorCode::InvalidConfig, "synth.count must be positive");
}

EnvLookup process_environment() {
  return [](std::string_view name) -> std::optional<std::string> {
    const char* value = std::getenv(std::string(name).c_str());
    if (value == nullptr) return std::nullopt;
    return std::string(value);
  };
}

std::string default_config_text() { return to_json(RunConfig{}).dump(2) + "\n"; }

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, fmt::format("config is not valid JSON: {}", e.what()));
  }
  return from_json(doc);
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& file, std::span<const std::string> overrides,
                         const EnvLookup& env) {
  const json schema = to_json(RunConfig{});
  json doc = json::object();
  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidConfig, fmt::format("cannot read config file '{}'", file->string()));
    std::ostringstream text;
    text << in.rdbuf();
    try {
      doc = json::parse(text.str());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("config is not valid JSON: {}", e.what()));
    }
    reject_unknown_keys(doc, schema, "");
  }

  for (const auto& [section, keys] : schema.items()) {
    for (const auto& [key, value] : keys.items()) {
      const auto env_value = env(fmt::format("{}{}_{}", kEnvPrefix, upper(section), upper(key)));
      if (env_value) apply_override(doc, schema, section, key, *env_value);
    }
  }

  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    const auto dot = item.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      throw Error(ErrorCode::InvalidConfig, fmt::format("override '{}' must look like section.key=value", item));
    }
    apply_override(doc, schema, item.substr(0, dot), item.substr(dot + 1, eq - dot - 1), item.substr(eq + 1));
  }

  RunConfig config = from_json(doc);
  config.validate();
  return config;
}

}  // namespace maneuver
