#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maneuver/error.hpp"
#include "maneuver/metrics.hpp"
#include "oracles.hpp"

using namespace maneuver;

namespace {

ConfusionMatrix cm(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) { return {tp, fp, tn, fn}; }

bool passes_through(const RocCurve& c, double fpr, double tpr) {
  for (const auto& p : c.points)
    if (p.fpr == fpr && p.tpr == tpr) return true;
  return false;
}

}  // namespace

TEST_CASE("confusion counts") {
  const std::vector<Label> t{1, 1, 0, 0}, p{1, 0, 0, 1};
  CHECK(confusion(t, p) == cm(1, 1, 1, 1));
  const auto same = confusion(t, t);
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  const std::vector<Label> flipped{0, 0, 1, 1};
  const auto comp = confusion(t, flipped);
  CHECK(comp.tp == 0);
  CHECK(comp.tn == 0);
  CHECK_THROWS_AS(confusion(t, std::vector<Label>{1, 0}), Error);
  CHECK_THROWS_AS(confusion(std::vector<Label>{}, std::vector<Label>{}), Error);
  CHECK(cm(1, 2, 3, 4).swapped() == cm(3, 4, 1, 2));
}

TEST_CASE("precision and recall") {
  CHECK(precision(cm(5, 0, 0, 0)).value == 1.0);
  const Rate none = precision(cm(0, 0, 7, 2));
  CHECK(none.value == 0.0);
  CHECK(none.degenerate);
  CHECK(precision(cm(3, 1, 0, 0)).value == 0.75);
  CHECK_FALSE(precision(cm(3, 1, 0, 0)).degenerate);

  CHECK(recall(cm(4, 0, 0, 1)).value == doctest::Approx(0.8));
  CHECK(recall(cm(4, 3, 2, 0)).value == 1.0);
  CHECK(recall(cm(0, 3, 2, 0)).degenerate);
  CHECK(recall(cm(0, 3, 2, 0)).value == 0.0);

  // Class 0 metrics read the swapped matrix: TN / (TN + FN) and TN / (TN + FP).
  CHECK(precision(cm(1, 2, 3, 1), 0).value == 0.75);
  CHECK(recall(cm(1, 2, 3, 1), 0).value == 0.6);
}

TEST_CASE("specificity and false positive rate") {
  CHECK(specificity(cm(0, 1, 9, 0)).value == doctest::Approx(0.9));
  CHECK(false_positive_rate(cm(0, 1, 9, 0)).value == doctest::Approx(0.1));
  CHECK(specificity(cm(2, 0, 5, 1)).value == 1.0);
  CHECK(false_positive_rate(cm(2, 0, 5, 1)).value == 0.0);
  const Rate s = specificity(cm(3, 0, 0, 1));
  const Rate f = false_positive_rate(cm(3, 0, 0, 1));
  CHECK(s.degenerate);
  CHECK(s.value == 0.0);
  CHECK(f.degenerate);
  CHECK(f.value == 1.0);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> u(0, 50);
  for (int i = 0; i < 500; ++i) {
    const auto m = cm(u(rng), u(rng), u(rng) + 1, u(rng));
    CHECK(specificity(m).value + false_positive_rate(m).value == 1.0);
  }
}

TEST_CASE("macro and weighted averaging") {
  CHECK(averaged({1.0, 0.5}, {10, 30}, AverageMode::Macro) == 0.75);
  CHECK(averaged({1.0, 0.5}, {10, 30}, AverageMode::Weighted) == 0.625);
  CHECK(averaged({0.2, 0.9}, {12, 12}, AverageMode::Macro) ==
        doctest::Approx(averaged({0.2, 0.9}, {12, 12}, AverageMode::Weighted)).epsilon(1e-15));
  CHECK(averaged({0.3, 0.7}, {5, 0}, AverageMode::Weighted) == doctest::Approx(0.3));
  CHECK(averaged({0.3, 0.7}, {5, 0}, AverageMode::Macro) == doctest::Approx(0.5));
  try {
    averaged({0.3, 0.7}, {0, 0}, AverageMode::Macro);
    FAIL("expected ZeroSupport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroSupport);
  }
}

TEST_CASE("f1 and its matrix form agree") {
  CHECK(f1(0.8, 0.8) == doctest::Approx(0.8));
  CHECK(f1(1.0, 0.0) == 0.0);
  CHECK(f1(0.0, 0.0) == 0.0);
  CHECK(f1_from_matrix(cm(0, 0, 5, 0)) == 0.0);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> u(0, 100);
  for (int i = 0; i < 1000; ++i) {
    const auto m = cm(u(rng), u(rng), u(rng), u(rng));
    for (Label c : {Label{0}, Label{1}}) {
      const double pr = f1(precision(m, c).value, recall(m, c).value);
      CHECK(std::fabs(pr - f1_from_matrix(m, c)) <= 1e-12);
    }
  }
}

TEST_CASE("roc curve shapes") {
  const std::vector<Label> y{0, 0, 1, 1};
  const auto sep = roc(y, std::vector<double>{0.1, 0.2, 0.8, 0.9});
  CHECK(passes_through(sep, 0.0, 1.0));
  CHECK(auc(sep) == 1.0);
  CHECK(sep.points.front().threshold == 1.9);

  const auto tied = roc(y, std::vector<double>{0.4, 0.4, 0.4, 0.4});
  REQUIRE(tied.points.size() == 2);
  CHECK(tied.points[0].fpr == 0.0);
  CHECK(tied.points[0].tpr == 0.0);
  CHECK(tied.points[1].fpr == 1.0);
  CHECK(tied.points[1].tpr == 1.0);
  CHECK(auc(tied) == 0.5);

  const auto rev = roc(y, std::vector<double>{0.9, 0.8, 0.2, 0.1});
  CHECK(passes_through(rev, 1.0, 0.0));
  CHECK(auc(rev) == 0.0);

  CHECK_THROWS_AS(roc(std::vector<Label>{1, 1}, std::vector<double>{0.1, 0.2}), Error);
  CHECK_THROWS_AS(roc(y, std::vector<double>{0.1}), Error);
}

TEST_CASE("trapezoidal auc equals pair counting, including ties") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    const int levels = trial % 3 == 0 ? 4 : 1000;
    std::vector<Label> y(n);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = static_cast<Label>(rng() % 2);
      s[i] = static_cast<double>(rng() % levels) / levels;
    }
    y[0] = 0;
    y[1] = 1;
    const auto curve = roc(y, s);
    CHECK(is_valid_roc(curve));
    CHECK(std::fabs(auc(curve) - oracle::pair_counting_auc(y, s)) <= 1e-12);
  }
}

TEST_CASE("auc is invariant under strictly increasing score maps") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Label> y;
    std::vector<double> s, t;
    for (int i = 0; i < 80; ++i) {
      y.push_back(static_cast<Label>(i % 2));
      s.push_back(std::round(4.0 * (g(rng) + 0.5 * (i % 2))) / 4.0);
      t.push_back(std::exp(s.back()) * 3.0 + 1.0);
    }
    CHECK(auc(roc(y, s)) == doctest::Approx(auc(roc(y, t))).epsilon(1e-12));
  }
}

TEST_CASE("tpr at a threshold equals recall at that threshold") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Label> y;
  std::vector<double> s;
  for (int i = 0; i < 60; ++i) {
    y.push_back(static_cast<Label>(i % 3 == 0));
    s.push_back(std::round(u(rng) * 10.0) / 10.0);
  }
  for (const auto& p : roc(y, s).points) {
    std::vector<Label> pred;
    for (double v : s) pred.push_back(v >= p.threshold ? 1 : 0);
    const auto m = confusion(y, pred);
    CHECK(recall(m).value == p.tpr);
    CHECK(false_positive_rate(m).value == doctest::Approx(p.fpr).epsilon(1e-15));
  }
}

TEST_CASE("is_valid_roc rejects malformed curves") {
  CHECK_FALSE(is_valid_roc(RocCurve{}));
  CHECK_FALSE(is_valid_roc(RocCurve{{{0, 0, 1}, {0.5, 0.4, 0.5}, {0.4, 1, 0.2}, {1, 1, 0}}}));
  CHECK_FALSE(is_valid_roc(RocCurve{{{0, 0, 1}, {1, 0.9, 0}}}));
  CHECK(is_valid_roc(RocCurve{{{0, 0, 1}, {1, 1, 0}}}));
}
