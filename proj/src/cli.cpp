#include "maneuver/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "maneuver/dataset.hpp"
#include "maneuver/features.hpp"
#include "maneuver/model.hpp"
#include "maneuver/random.hpp"
#include "maneuver/report.hpp"
#include "maneuver/roc_plot.hpp"
#include "maneuver/trajectory_io.hpp"

namespace maneuver {
namespace {

namespace fs = std::filesystem;

class Console {
 public:
  Console(std::ostream& out, bool quiet) : out_(out), quiet_(quiet) {}

  template <class... Args>
  void print(fmt::format_string<Args...> format, Args&&... args) {
    if (!quiet_) out_ << fmt::format(format, std::forward<Args>(args)...);
  }

 private:
  std::ostream& out_;
  bool quiet_;
};

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write to '{}' failed", path.string()));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot read '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Dataset load_dataset(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot read dataset '{}'", path.string()));
  try {
    return read_csv(in);
  } catch (const Error& e) {
    throw e.with_context(path.filename().string());
  }
}

fs::path model_path(const RunConfig& cfg, Algorithm a) {
  return cfg.paths.model_dir / fmt::format("{}.json", algorithm_tag(a));
}

std::vector<FeatureRecord> extract_all(const Corpus& corpus, const FeatureConfig& feature) {
  std::vector<FeatureRecord> records;
  records.reserve(corpus.trajectories.size());
  for (const auto& traj : corpus.trajectories) {
    try {
      records.push_back(extract_features(traj, feature));
    } catch (const Error& e) {
      throw e.with_context(traj.vehicle_id);
    }
  }
  return records;
}

int cmd_synth(const RunConfig& cfg, const std::optional<std::string>& out_dir, std::optional<std::size_t> count,
              Console& console) {
  const fs::path dir = out_dir ? fs::path(*out_dir) : cfg.paths.corpus_dir;
  const std::size_t n = count.value_or(cfg.synth.count);
  if (n == 0) throw Error(ErrorCode::Usage, "--count must be positive");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    SynthConfig one = cfg.synth.trajectory;
    one.seed = mix_seed(cfg.synth.trajectory.seed, i);
    const std::string id = fmt::format("traj_{:05d}", i);
    const Trajectory traj = generate_synthetic(one, id);
    positives += maneuver_label(traj, cfg.feature);
    write_file(dir / (id + ".csv"), serialize_trajectory(traj));
  }
  console.print("wrote {} trajectories to {}\n", n, dir.string());
  console.print("labels at threshold {}: maneuver={} no_maneuver={}\n", cfg.feature.maneuver_threshold, positives,
                n - positives);
  return kExitOk;
}

int cmd_build_dataset(const RunConfig& cfg, Console& console, std::ostream& err) {
  const Corpus corpus = load_corpus(cfg.paths.corpus_dir, {ParseOptions{}, cfg.skip_invalid_files});
  for (const auto& s : corpus.skipped) err << fmt::format("WARN skipped {}: {}\n", s.filename, s.reason);
  const Dataset ds = build_dataset(extract_all(corpus, cfg.feature));

  std::ostringstream csv;
  write_csv(ds, csv);
  write_file(cfg.paths.dataset_file, csv.str());

  console.print("dataset: {} rows -> {}\n", ds.size(), cfg.paths.dataset_file.string());
  console.print("{:<22} {:>14} {:>14} {:>14} {:>14}\n", "feature", "mean", "std", "min", "max");
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    double sum = 0.0;
    double lo = ds.row(0)[c];
    double hi = lo;
    for (const auto& row : ds.rows()) {
      sum += row[c];
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    const double mean = sum / static_cast<double>(ds.size());
    double sq = 0.0;
    for (const auto& row : ds.rows()) sq += (row[c] - mean) * (row[c] - mean);
    console.print("{:<22} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g}\n", kFeatureNames[c], mean,
                  std::sqrt(sq / static_cast<double>(ds.size())), lo, hi);
  }
  const auto counts = ds.class_counts();
  console.print("labels: maneuver={} no_maneuver={}\n", counts[1], counts[0]);
  return kExitOk;
}

std::vector<Algorithm> selected_algorithms(const std::string& name) {
  if (name == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  try {
    return {parse_algorithm(name)};
  } catch (const Error&) {
    throw Error(ErrorCode::Usage, fmt::format("unknown algorithm '{}' (expected all, logreg, knn, lda or gbdt)", name));
  }
}

int cmd_train(const RunConfig& cfg, const std::vector<Algorithm>& algorithms, Console& console) {
  const Dataset ds = load_dataset(cfg.paths.dataset_file);
  const SplitResult parts = split(ds, cfg.split);
  const ScalerParams scaler = fit_scaler(parts.train);
  const Dataset scaled = apply_scaler(parts.train, scaler);
  const auto counts = parts.train.class_counts();
  console.print("train split: {} rows (maneuver={} no_maneuver={}), test split: {} rows\n", parts.train.size(),
                counts[1], counts[0], parts.test.size());
  for (std::size_t c : scaler.constant_columns) {
    console.print("note: column {} is constant in the train split\n", kFeatureNames[c]);
  }

  for (Algorithm a : algorithms) {
    ModelBundle bundle{LogRegModel{}, scaler};
    switch (a) {
      case Algorithm::LogReg: {
        auto m = logreg_fit(scaled, cfg.logreg);
        console.print("logreg: {} iterations, loss {:.6f} -> {:.6f}\n", cfg.logreg.n_iters, m.training_curve.front(),
                      m.training_curve.back());
        bundle.model = std::move(m);
        break;
      }
      case Algorithm::Knn: {
        auto m = knn_fit(scaled, cfg.knn_k);
        console.print("knn: k={}, {} stored rows\n", m.k, m.rows.size());
        bundle.model = std::move(m);
        break;
      }
      case Algorithm::Lda: {
        auto m = lda_fit(scaled);
        console.print("lda: threshold {:.6f}{}\n", m.projected_threshold,
                      m.ridge_applied ? fmt::format(", ridge epsilon {:.3g}", m.ridge_epsilon) : "");
        bundle.model = std::move(m);
        break;
      }
      case Algorithm::Gbdt: {
        auto m = gbdt_fit(parts.train, cfg.gbdt);
        console.print("gbdt: {} trees, loss {:.6f} -> {:.6f}\n", m.trees.size(), m.training_curve.front(),
                      m.training_curve.back());
        bundle.model = std::move(m);
        bundle.scaler.reset();
        break;
      }
    }
    const fs::path path = model_path(cfg, a);
    write_file(path, save_model(bundle));
    console.print("  -> {}\n", path.string());
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, Console& console) {
  std::vector<Algorithm> present;
  for (Algorithm a : kAllAlgorithms) {
    if (fs::exists(model_path(cfg, a))) present.push_back(a);
  }
  if (present.empty()) {
    throw Error(ErrorCode::MissingModel,
                fmt::format("no model documents in '{}'; run `train` first", cfg.paths.model_dir.string()));
  }

  const Dataset ds = load_dataset(cfg.paths.dataset_file);
  const SplitResult parts = split(ds, cfg.split);

  std::vector<NamedModel> models;
  for (Algorithm a : present) {
    const fs::path path = model_path(cfg, a);
    try {
      ModelBundle bundle = load_model(read_file(path));
      if (bundle.algorithm() != a) {
        throw Error(ErrorCode::ModelFormatError, fmt::format("document holds a {} model", algorithm_tag(bundle.algorithm())));
      }
      models.push_back({std::string(algorithm_tag(a)), std::move(bundle)});
    } catch (const Error& e) {
      throw e.with_context(path.filename().string());
    }
  }

  const auto reports = build_report(models, parts.test, cfg.decision);
  std::vector<NamedCurve> curves;
  for (const auto& r : reports) curves.push_back({r.algorithm, r.roc});
  const RocPlot plot = render_roc(curves);
  const std::string table = summary_table(reports);

  write_file(cfg.paths.report_dir / "report.json", report_document(reports));
  write_file(cfg.paths.report_dir / "summary.txt", table);
  write_file(cfg.paths.report_dir / "roc.csv", plot.csv);
  write_file(cfg.paths.report_dir / "roc.svg", plot.svg);

  console.print("evaluated {} model(s) on {} test rows (threshold {})\n", reports.size(), parts.test.size(),
                cfg.decision.score_threshold);
  console.print("{}", table);
  console.print("report -> {}\n", cfg.paths.report_dir.string());
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, Console& console, std::ostream& err) {
  console.print("config ok\n");
  const Corpus corpus = load_corpus(cfg.paths.corpus_dir, {ParseOptions{}, cfg.skip_invalid_files});
  for (const auto& s : corpus.skipped) err << fmt::format("WARN skipped {}: {}\n", s.filename, s.reason);
  const auto records = extract_all(corpus, cfg.feature);
  std::size_t positives = 0;
  for (const auto& r : records) positives += r.maneuver;
  console.print("corpus ok: {} trajectories, {} skipped, maneuver={} no_maneuver={}\n", corpus.trajectories.size(),
                corpus.skipped.size(), positives, records.size() - positives);
  if (!records.empty()) {
    const Dataset ds = build_dataset(records);
    const SplitResult parts = split(ds, cfg.split);
    console.print("split ok: {} train / {} test\n", parts.train.size(), parts.test.size());
  }
  return kExitOk;
}

}  // namespace

int exit_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::InvalidConfig:
      return kExitUsage;
    case ErrorCode::MissingModel:
      return kExitMissingModel;
    case ErrorCode::BadHeader:
    case ErrorCode::MalformedRow:
    case ErrorCode::RangeViolation:
    case ErrorCode::NonMonotonicTime:
    case ErrorCode::TooShort:
    case ErrorCode::CorpusError:
    case ErrorCode::SeriesTooShort:
    case ErrorCode::EmptyInput:
    case ErrorCode::EmptyCorpus:
    case ErrorCode::NonFiniteFeature:
    case ErrorCode::DegenerateSplit:
    case ErrorCode::SchemaError:
    case ErrorCode::LabelDomainError:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SingleClassTruth:
      return kExitData;
    case ErrorCode::SingleClassTrain:
    case ErrorCode::DivergenceDetected:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::BadK:
    case ErrorCode::DegenerateClassMeans:
    case ErrorCode::ZeroSupport:
    case ErrorCode::EmptyCurveSet:
      return kExitTraining;
    case ErrorCode::SchemaVersionMismatch:
    case ErrorCode::UnknownAlgorithmTag:
    case ErrorCode::ModelFormatError:
      return kExitModelFile;
    case ErrorCode::IoError:
      return kExitIo;
  }
  return kExitInternal;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Maneuver detection pipeline: synthesize, extract features, train, evaluate.", "maneuver"};
  std::string config_path;
  std::uint64_t seed = 0;
  bool quiet = false;
  std::vector<std::string> overrides;
  auto* config_opt = app.add_option("--config", config_path, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for synthesis and splitting (overrides the config)");
  app.add_flag("--quiet", quiet, "Suppress progress output");
  app.add_option("--set", overrides, "Override a config key: section.key=value (repeatable)");
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  auto* synth = app.add_subcommand("synth", "Write synthetic trajectory CSVs");
  std::string out_dir;
  std::size_t count = 0;
  auto* out_dir_opt = synth->add_option("--out-dir", out_dir, "Output directory (default: paths.corpus_dir)");
  auto* count_opt = synth->add_option("--count", count, "Number of trajectories (default: synth.count)");

  auto* build = app.add_subcommand("build-dataset", "Corpus -> features -> dataset CSV");
  auto* train = app.add_subcommand("train", "Fit classifiers and write model documents");
  std::string algorithm = "all";
  train->add_option("--algorithm", algorithm, "all, logreg, knn, lda or gbdt")->capture_default_str();
  auto* evaluate = app.add_subcommand("evaluate", "Score models on the test split; write report and ROC plots");
  auto* validate = app.add_subcommand("validate", "Check configuration and corpus without training");

  std::vector<std::string> argv_storage{"maneuver"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << fmt::format("ERROR {}: {}\n", to_string(ErrorCode::Usage), e.what());
    return kExitUsage;
  }

  try {
    std::vector<std::string> layered = overrides;
    if (*seed_opt) {
      layered.push_back(fmt::format("synth.seed={}", seed));
      layered.push_back(fmt::format("split.seed={}", seed));
    }
    const std::optional<fs::path> file = *config_opt ? std::optional<fs::path>(config_path) : std::nullopt;
    const RunConfig cfg = resolve_config(file, layered, env);
    Console console(out, quiet);

    if (synth->parsed()) {
      return cmd_synth(cfg, *out_dir_opt ? std::optional<std::string>(out_dir) : std::nullopt,
                       *count_opt ? std::optional<std::size_t>(count) : std::nullopt, console);
    }
    if (build->parsed()) return cmd_build_dataset(cfg, console, err);
    if (train->parsed()) return cmd_train(cfg, selected_algorithms(algorithm), console);
    if (evaluate->parsed()) return cmd_evaluate(cfg, console);
    if (validate->parsed()) return cmd_validate(cfg, console, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << fmt::format("ERROR {}: {}\n", to_string(e.code()), e.what());
    return exit_status_for(e.code());
  } catch (const std::exception& e) {
    err << fmt::format("ERROR Internal: {}\n", e.what());
    return kExitInternal;
  }
}

}  // namespace maneuver
