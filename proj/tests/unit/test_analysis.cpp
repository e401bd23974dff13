#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hcp/analysis.hpp"
#include "hcp/error.hpp"
#include "hcp/features.hpp"
#include "hcp/rng.hpp"

using namespace hcp;

namespace {

std::vector<LabeledPoint> two_clusters(int per_cluster, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledPoint> pts;
  std::uint64_t id = 0;
  for (int c = 0; c < 2; ++c) {
    const double cx = c == 0 ? -10.0 : 10.0;
    for (int i = 0; i < per_cluster; ++i) {
      pts.push_back(make_labeled_point({cx + rng.normal(), rng.normal()}, c == 0 ? 1.0 : -1.0, id++));
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("label convention") {
  CHECK(label_for(0.0) == DominanceLabel::exact_faster);
  CHECK(label_for(0.1) == DominanceLabel::exact_faster);
  CHECK(label_for(-1e-12) == DominanceLabel::heuristic_faster);
}

TEST_CASE("histograms") {
  const std::vector<double> zeros(7, 0.0);
  const auto h = runtime_histogram(zeros, 1.0);
  CHECK(h.counts == std::vector<std::size_t>{7});
  CHECK(h.origin == 0.0);

  const std::vector<double> three{-0.5, 0.5, 1.5};
  const auto r = runtime_histogram(three, 1.0, std::pair{-1.0, 2.0});
  CHECK(r.counts == std::vector<std::size_t>{1, 1, 1});

  const std::vector<double> wide{-5.0, 0.2, 0.7, 9.0};
  const auto clamped = runtime_histogram(wide, 0.5, std::pair{0.0, 1.0});
  CHECK(clamped.counts == std::vector<std::size_t>{2, 2});
  CHECK(clamped.total() == wide.size());

  Rng rng(1);
  std::vector<double> values(500);
  for (auto& v : values) v = rng.normal();
  CHECK(runtime_histogram(values, 0.25).total() == 500);

  CHECK_THROWS_AS(runtime_histogram(three, 0.0), InvalidArgument);
  CHECK_THROWS_AS(runtime_histogram(three, -1.0), InvalidArgument);
}

TEST_CASE("knn basics") {
  const auto pts = two_clusters(50, 2);
  for (const auto& p : pts) CHECK(knn_classify(pts, p.position, 1) == p.label);

  // k = |train| with a 60/40 split returns the majority everywhere.
  std::vector<LabeledPoint> skewed;
  for (std::uint64_t i = 0; i < 10; ++i) {
    skewed.push_back(make_labeled_point({double(i), 0.0}, i < 6 ? 1.0 : -1.0, i));
  }
  for (double x : {-50.0, 0.0, 9.0, 100.0}) {
    CHECK(knn_classify(skewed, {x, 3.0}, 10) == DominanceLabel::exact_faster);
  }
}

TEST_CASE("knn tie breaking") {
  // Two points at equal distance: the smaller id wins the single vote.
  std::vector<LabeledPoint> pts{make_labeled_point({1, 0}, -1.0, 9), make_labeled_point({-1, 0}, 1.0, 4)};
  CHECK(knn_classify(pts, {0, 0}, 1) == DominanceLabel::exact_faster);
  // Vote tie: nearest neighbour decides.
  std::vector<LabeledPoint> vote{make_labeled_point({0.5, 0}, -1.0, 1), make_labeled_point({2, 0}, 1.0, 0)};
  CHECK(knn_classify(vote, {0, 0}, 2) == DominanceLabel::heuristic_faster);
}

TEST_CASE("knn is invariant under training order") {
  Rng rng(3);
  std::vector<LabeledPoint> pts;
  for (std::uint64_t i = 0; i < 300; ++i) {
    // Coarse grid coordinates force many exact distance ties.
    pts.push_back(make_labeled_point({double(rng.below(6)), double(rng.below(6))},
                                     rng.bernoulli(0.5) ? 1.0 : -1.0, i));
  }
  std::vector<DominanceLabel> before;
  for (int q = 0; q < 50; ++q) before.push_back(knn_classify(pts, {q % 7 * 0.9, q / 7 * 0.8}, 15));
  rng.shuffle(pts.begin(), pts.end());
  for (int q = 0; q < 50; ++q) CHECK(knn_classify(pts, {q % 7 * 0.9, q / 7 * 0.8}, 15) == before[static_cast<std::size_t>(q)]);
}

TEST_CASE("classifier on separable clusters") {
  const auto pts = two_clusters(300, 4);
  const auto report = evaluate_classifier(pts, 11, 100);
  CHECK(report.accuracy == 1.0);
  CHECK(report.train_size == 300);
  CHECK(report.test_size == 300);
  CHECK(report.misclassified.empty());
  std::size_t total = 0;
  for (auto& row : report.confusion) total += row[0] + row[1];
  CHECK(total == report.test_size);

  // Duplicated archive: every test point has a twin in the pool.
  auto doubled = pts;
  doubled.insert(doubled.end(), pts.begin(), pts.end());
  CHECK(evaluate_classifier(doubled, 5, 100).accuracy == 1.0);
}

TEST_CASE("classifier on random labels and reproducibility") {
  Rng rng(6);
  std::vector<LabeledPoint> pts;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    pts.push_back(make_labeled_point({rng.normal(), rng.normal()}, rng.bernoulli(0.5) ? 1.0 : -1.0, i));
  }
  const auto a = evaluate_classifier(pts, 1, 100);
  CHECK(std::abs(a.accuracy - 0.5) <= 0.03);
  const auto b = evaluate_classifier(pts, 1, 100);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.misclassified == b.misclassified);
  std::ostringstream ca, cb;
  write_report_csv(ca, a);
  write_report_csv(cb, b);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("classifier needs 2k points") {
  const auto pts = two_clusters(10, 1);
  CHECK_THROWS_AS(evaluate_classifier(pts, 0, 11), InsufficientData);
  CHECK_NOTHROW(evaluate_classifier(pts, 0, 10));
}

TEST_CASE("dominance prediction rule") {
  CHECK(dominance_prediction_rule(feature_vector(test::cycle(10))) == HardnessFlag::normal);

  std::ifstream in(HCP_FIXTURE_DIR "/dominance_graph.txt");
  REQUIRE(in);
  const Graph g = read_edge_list(in);
  const auto fv = feature_vector(g);
  INFO("density " << fv.density << " diameter " << fv.diameter << " skew " << fv.degree_skewness);
  CHECK(fv.density >= 0.25);
  CHECK(fv.density <= 0.35);
  CHECK(fv.diameter == 2);
  CHECK(fv.degree_skewness == doctest::Approx(-0.37947331922).epsilon(1e-9));
  CHECK(dominance_prediction_rule(fv) == HardnessFlag::very_hard_for_heuristic);
}
