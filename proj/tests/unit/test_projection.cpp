#include <cmath>

#include "doctest.h"
#include "hcp/error.hpp"
#include "hcp/features.hpp"
#include "hcp/generators.hpp"
#include "hcp/projection.hpp"
#include "hcp/rng.hpp"
#include "samples.hpp"

using namespace hcp;
using doctest::Approx;

namespace {

double dot(const FeatureArray& a, const FeatureArray& b) {
  double s = 0.0;
  for (std::size_t f = 0; f < kFeatureCount; ++f) s += a[f] * b[f];
  return s;
}

// Rows whose log lies on a 2-D affine subspace. The +20 shift keeps the
// 1e-9 log guard far below double resolution.
std::vector<FeatureArray> rank_two_rows(int count, std::uint64_t seed) {
  Rng rng(seed);
  FeatureArray a{};
  FeatureArray b{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    a[f] = rng.normal();
    b[f] = rng.normal();
  }
  std::vector<FeatureArray> rows;
  for (int i = 0; i < count; ++i) {
    const double u = rng.normal();
    const double v = rng.normal();
    FeatureArray row{};
    for (std::size_t f = 0; f < kFeatureCount; ++f) row[f] = std::exp(20.0 + a[f] * u + b[f] * v);
    rows.push_back(row);
  }
  return rows;
}

std::vector<FeatureVector> graph_features(std::uint64_t seed) {
  std::vector<FeatureVector> out;
  for (const auto& g : test::sample_graphs(120, 16, 16, seed)) out.push_back(feature_vector(g));
  for (const auto& spec : standard_sweep(16, 10, seed)) out.push_back(feature_vector(generate(spec)));
  return out;
}

}  // namespace

TEST_CASE("rank-2 data is fully explained by two components") {
  const auto rows = rank_two_rows(400, 3);
  const auto model = fit_projection(rows);
  CHECK(std::abs(model.variance_explained[0] + model.variance_explained[1] - 1.0) < 1e-9);
  CHECK(model.variance_explained[0] >= model.variance_explained[1]);
}

TEST_CASE("isotropic data spreads variance evenly") {
  Rng rng(10);
  std::vector<FeatureArray> rows(10000);
  for (auto& row : rows) {
    for (auto& x : row) x = std::exp(rng.normal());
  }
  const auto model = fit_projection(rows);
  CHECK(model.variance_explained[0] == Approx(0.1).epsilon(0.2));
  CHECK(model.variance_explained[1] == Approx(0.1).epsilon(0.2));
}

TEST_CASE("components are orthonormal and sign-normalized") {
  const auto model = fit_projection(graph_features(1));
  CHECK(std::abs(dot(model.components[0], model.components[1])) < 1e-9);
  for (const auto& c : model.components) {
    CHECK(std::abs(dot(c, c) - 1.0) < 1e-9);
    std::size_t largest = 0;
    for (std::size_t f = 1; f < kFeatureCount; ++f) {
      if (std::abs(c[f]) > std::abs(c[largest])) largest = f;
    }
    CHECK(c[largest] > 0.0);
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (!model.retained(f)) {
      CHECK(model.components[0][f] == 0.0);
      CHECK(model.components[1][f] == 0.0);
    }
  }
  CHECK(model.eigenvalues[0] >= model.eigenvalues[1]);
}

TEST_CASE("training mean projects to the origin and axis variances match eigenvalues") {
  const auto features = graph_features(2);
  const auto model = fit_projection(features);

  FeatureArray mean_input{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    mean_input[f] = std::exp(model.means[f]) - model.offsets[f] - kLogGuard;
  }
  const Point2 origin = project(model, mean_input);
  CHECK(std::abs(origin.x) < 1e-9);
  CHECK(std::abs(origin.y) < 1e-9);

  double sx = 0, sy = 0, sxx = 0, syy = 0;
  for (const auto& fv : features) {
    const Point2 p = project(model, fv);
    sx += p.x;
    sy += p.y;
    sxx += p.x * p.x;
    syy += p.y * p.y;
  }
  const double n = static_cast<double>(features.size());
  CHECK(std::abs(sx / n) < 1e-9);
  CHECK(std::abs(sy / n) < 1e-9);
  CHECK(sxx / n == Approx(model.eigenvalues[0]).epsilon(1e-6));
  CHECK(syy / n == Approx(model.eigenvalues[1]).epsilon(1e-6));
}

TEST_CASE("fit ignores row order and duplicates project identically") {
  auto rows = rank_two_rows(50, 4);
  for (auto& row : rows) row[3] = 0.0;  // constant feature at zero
  const auto model = fit_projection(rows);
  CHECK_FALSE(model.retained(3));
  Rng rng(1);
  rng.shuffle(rows.begin(), rows.end());
  CHECK(fit_projection(rows) == model);
  CHECK(save_model(fit_projection(rows)) == save_model(model));
  CHECK(project(model, rows[7]) == project(model, rows[7]));
}

TEST_CASE("fit errors") {
  std::vector<FeatureArray> two(2);
  two[1][0] = 1.0;
  CHECK_THROWS_AS(fit_projection(two), InsufficientData);
  std::vector<FeatureArray> same(5);
  CHECK_THROWS_AS(fit_projection(same), InsufficientData);
}

TEST_CASE("project rejects non-finite input") {
  const auto model = fit_projection(rank_two_rows(20, 5));
  FeatureArray bad{};
  bad[2] = std::nan("");
  CHECK_THROWS_AS(project(model, bad), InvalidArgument);
}

TEST_CASE("save/load round trips exactly") {
  const auto model = fit_projection(graph_features(3));
  const auto text = save_model(model);
  CHECK(load_model(text) == model);
  CHECK(save_model(load_model(text)) == text);
  CHECK_THROWS_AS(load_model("garbage"), FormatError);
  CHECK_THROWS_AS(load_model(text.substr(0, text.size() / 2)), FormatError);
  auto wrong_version = text;
  wrong_version.replace(wrong_version.find(" 1\n"), 3, " 9\n");
  CHECK_THROWS_AS(load_model(wrong_version), FormatError);
}

TEST_CASE("distance is Euclidean") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
}
