#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "maneuver/error.hpp"
#include "maneuver/gbdt.hpp"
#include "maneuver/lda.hpp"
#include "maneuver/report.hpp"
#include "maneuver/roc_plot.hpp"
#include "oracles.hpp"

using namespace maneuver;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// Scores every row above 0.5: zero trees on a 3:1 positive training set.
ModelBundle always_positive() {
  const Dataset train = oracle::make_dataset({{0, 0, 0, 0}, {1, 0, 0, 0}, {2, 0, 0, 0}, {3, 0, 0, 0}}, {0, 1, 1, 1});
  return {gbdt_fit(train, {0, 1, 0.1, 1}), std::nullopt};
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

TEST_CASE("an all-positive model on a balanced test set") {
  const Dataset test = oracle::make_dataset({{0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}}, {0, 1, 0, 1});
  const std::vector<NamedModel> models{{"const", always_positive()}};
  const auto reports = build_report(models, test, {});
  REQUIRE(reports.size() == 1);
  const MetricsReport& r = reports[0];
  CHECK(r.recall_per_class[1] == 1.0);
  CHECK(r.precision_per_class[1] == 0.5);
  CHECK(r.confusion == ConfusionMatrix{2, 2, 0, 0});
  CHECK(r.auc == 0.5);
  // No predicted negatives: class-0 precision has no denominator.
  CHECK(std::find(r.degenerate.begin(), r.degenerate.end(), "precision[0]") != r.degenerate.end());
}

TEST_CASE("reports are deterministic and bounded") {
  std::mt19937_64 rng(50);
  const Dataset train = oracle::random_gaussian_dataset(90, rng);
  const Dataset test = oracle::random_gaussian_dataset(60, rng);
  const ModelBundle lda{lda_fit(train), std::nullopt};
  const std::vector<NamedModel> models{{"a", lda}, {"b", lda}};
  const auto reports = build_report(models, test, {});
  CHECK(reports[0].roc == reports[1].roc);
  CHECK(reports[0].confusion == reports[1].confusion);
  CHECK(reports[0].f1 == reports[1].f1);
  CHECK(report_document(reports) == report_document(build_report(models, test, {})));
  for (const auto& r : reports) {
    for (double v : {r.precision_macro, r.precision_weighted, r.recall_macro, r.recall_weighted, r.f1, r.f1_macro,
                     r.f1_weighted, r.specificity, r.fpr, r.auc})
      CHECK(in_unit(v));
    CHECK(is_valid_roc(r.roc));
    CHECK(r.specificity + r.fpr == 1.0);
    CHECK(r.support[0] + r.support[1] == test.size());
  }
}

TEST_CASE("report document layout") {
  std::mt19937_64 rng(51);
  const Dataset train = oracle::random_gaussian_dataset(60, rng);
  const std::vector<NamedModel> models{{"lda", {lda_fit(train), std::nullopt}}, {"const", always_positive()}};
  const auto reports = build_report(models, train, {});
  const auto doc = nlohmann::json::parse(report_document(reports));
  CHECK(doc.at("schema_version") == kReportSchemaVersion);
  REQUIRE(doc.at("algorithms").size() == 2);
  const auto& first = doc.at("algorithms")[0];
  CHECK(first.at("algorithm") == "lda");
  const double f1 = first.at("f1").get<double>();
  CHECK(f1 == doctest::Approx(std::round(reports[0].f1 * 1e4) / 1e4).epsilon(1e-15));

  const std::string table = summary_table(reports);
  // Higher F1 is listed first.
  const bool lda_first = reports[0].f1 >= reports[1].f1;
  CHECK((table.find("lda") < table.find("const")) == lda_first);
}

TEST_CASE("roc plot structure") {
  const RocCurve diag{{{0, 0, 2}, {1, 1, 1}}};
  const std::vector<NamedCurve> one{{"diag", diag}};
  const RocPlot plot = render_roc(one);
  CHECK(count_of(plot.svg, "<polyline") == 1);
  CHECK(count_of(plot.svg, "class=\"chance\"") == 1);
  CHECK(plot.svg.find("stroke=\"red\"") != std::string::npos);
  CHECK(plot.svg.find("diag (AUC = 0.5000)") != std::string::npos);
  CHECK(render_roc(one).svg == plot.svg);
  CHECK(render_roc(one).csv == plot.csv);

  const RocCurve bent{{{0, 0, 3}, {0, 0.5, 2}, {0.5, 1, 1}, {1, 1, 0}}};
  const std::vector<NamedCurve> two{{"diag", diag}, {"bent", bent}};
  const RocPlot both = render_roc(two);
  CHECK(count_of(both.svg, "<polyline") == 2);
  CHECK(count_of(both.svg, "class=\"chance\"") == 1);
  // Header plus one row per curve point.
  CHECK(count_of(both.csv, "\n") == 1 + 2 + 4);
  CHECK(both.csv.rfind("algorithm,threshold,fpr,tpr\n", 0) == 0);

  try {
    render_roc(std::vector<NamedCurve>{});
    FAIL("expected EmptyCurveSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCurveSet);
  }
}

TEST_CASE("published reference scores fixture") {
  std::ifstream in(MANEUVER_FIXTURE_DIR "/published_f1.json");
  REQUIRE(in);
  std::stringstream text;
  text << in.rdbuf();
  const auto doc = nlohmann::json::parse(text.str());
  const auto& f1 = doc.at("f1");
  CHECK(f1.size() == kAllAlgorithms.size());
  for (Algorithm a : kAllAlgorithms) {
    const double v = f1.at(std::string(algorithm_tag(a))).get<double>();
    CHECK(in_unit(v));
  }
  CHECK(f1.at("logreg").get<double>() == 0.82);
  CHECK(f1.at("knn").get<double>() == 0.85);
  CHECK(f1.at("lda").get<double>() == 0.86);
  CHECK(f1.at("gbdt").get<double>() == 0.88);
}
