#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "maneuver/error.hpp"
#include "maneuver/lda.hpp"
#include "maneuver/model.hpp"
#include "oracles.hpp"

using namespace maneuver;

namespace {

Matrix4 diagonal(double a, double b, double c, double d) {
  Matrix4 m{};
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  m[3][3] = d;
  return m;
}

double dot(const FeatureRow& a, const FeatureRow& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("fisher direction for identity and diagonal scatter") {
  const auto id = fisher_direction(diagonal(1, 1, 1, 1), {1, 0, 0, 0});
  CHECK(id.direction[0] == doctest::Approx(1.0));
  CHECK(id.direction[1] == doctest::Approx(0.0));
  CHECK_FALSE(id.ridge_applied);

  const auto d = fisher_direction(diagonal(1, 4, 1, 1), {1, 1, 0, 0});
  const auto expected = oracle::normalized({1.0, 0.25, 0.0, 0.0});
  for (std::size_t i = 0; i < 4; ++i) CHECK(d.direction[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("fisher direction agrees with an independent solver") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    // A A' + I is symmetric positive definite.
    Matrix4 a{}, s{};
    for (auto& row : a)
      for (double& v : row) v = g(rng);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        for (int k = 0; k < 4; ++k) s[r][c] += a[r][k] * a[c][k];
        if (r == c) s[r][c] += 1.0;
      }
    const FeatureRow diff{g(rng), g(rng), g(rng), g(rng)};
    const auto got = fisher_direction(s, diff).direction;
    const auto want = oracle::normalized(oracle::solve4(s, diff));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(got[i] - want[i]) <= 1e-8);
  }
}

TEST_CASE("singular scatter triggers the ridge") {
  Matrix4 s = diagonal(2, 2, 2, 0);
  const auto d = fisher_direction(s, {1, 0, 0, 0});
  CHECK(d.ridge_applied);
  CHECK(d.ridge_epsilon == doctest::Approx(1e-6 * 6.0 / 4.0));
  const auto z = fisher_direction(Matrix4{}, {1, 2, 0, 0});
  CHECK(z.ridge_applied);
  CHECK(z.ridge_epsilon == 1e-6);
  try {
    fisher_direction(diagonal(1, 1, 1, 1), {0, 0, 0, 0});
    FAIL("expected DegenerateClassMeans");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateClassMeans);
  }
}

TEST_CASE("lda_fit on rows lying in a subspace applies the ridge") {
  // Feature 3 duplicates feature 0, so the within scatter is rank deficient.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FeatureRow> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 40; ++i) {
    const Label y = i % 2;
    const double x0 = g(rng) + (y ? 3.0 : 0.0);
    rows.push_back({x0, g(rng), g(rng), x0});
    labels.push_back(y);
  }
  const LdaModel m = lda_fit(oracle::make_dataset(rows, labels));
  CHECK(m.ridge_applied);
  CHECK(m.ridge_epsilon > 0.0);
  for (double v : m.direction) CHECK(std::isfinite(v));
  CHECK(dot(m.direction, m.class_means[1]) > dot(m.direction, m.class_means[0]));
}

TEST_CASE("fitted direction maximizes the Rayleigh quotient") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset ds = oracle::random_gaussian_dataset(80, rng);
    const LdaModel m = lda_fit(ds);
    const double best = rayleigh_quotient(m.direction, m.between_scatter, m.within_scatter);
    for (int k = 0; k < 200; ++k) {
      const auto w = oracle::normalized({g(rng), g(rng), g(rng), g(rng)});
      CHECK(rayleigh_quotient(w, m.between_scatter, m.within_scatter) <= best * (1.0 + 1e-12));
    }
    // Threshold sits midway between the projected class means.
    const double mid = 0.5 * (dot(m.direction, m.class_means[0]) + dot(m.direction, m.class_means[1]));
    CHECK(m.projected_threshold == doctest::Approx(mid).epsilon(1e-12));
  }
}

TEST_CASE("predicted labels are invariant under positive affine feature maps") {
  std::mt19937_64 rng(11);
  const Dataset ds = oracle::random_gaussian_dataset(90, rng);
  const FeatureRow scale{3.0, 0.5, 20.0, 1.5};
  const FeatureRow shift{-4.0, 7.0, 0.25, 100.0};
  std::vector<FeatureRow> mapped;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    FeatureRow r = ds.row(i);
    for (std::size_t c = 0; c < 4; ++c) r[c] = scale[c] * r[c] + shift[c];
    mapped.push_back(r);
  }
  const TrainedModel a = lda_fit(ds);
  const TrainedModel b = lda_fit(oracle::make_dataset(mapped, ds.labels()));
  std::size_t agree = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    agree += predict_label(a, ds.row(i), {}) == predict_label(b, mapped[i], {});
  }
  CHECK(agree == ds.size());
}

TEST_CASE("lda_fit needs two rows of each class") {
  const Dataset ds = oracle::make_dataset({{0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}}, {0, 0, 1});
  try {
    lda_fit(ds);
    FAIL("expected SingleClassTrain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingleClassTrain);
  }
}
