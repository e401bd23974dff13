#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "hcp/eigen.hpp"
#include "hcp/features.hpp"
#include "hcp/generators.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace hcp;
using doctest::Approx;

namespace {

Graph relabel(const Graph& g, const std::vector<Node>& perm) {
  Graph out(g.n());
  for (auto [i, j] : g.edges()) out.set_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

Graph two_triangles() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return Graph::from_edges(6, e);
}

}  // namespace

TEST_CASE("density") {
  CHECK(density(Graph::complete(50)) == 1.0);
  CHECK(density(Graph(50)) == 0.0);
  CHECK(density(test::example_graph()) == 0.5);
}

TEST_CASE("clustering coefficient") {
  CHECK(clustering_coefficient(Graph::complete(4)) == Approx(1.0));
  CHECK(clustering_coefficient(test::star_graph(10)) == 0.0);
  Graph chord = test::cycle(5);
  chord.set_edge(0, 2);
  // Nodes 0 and 2 close one of three neighbour pairs, node 1 its only pair.
  CHECK(clustering_coefficient(chord) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(clustering_coefficient(chord) == Approx(test::clustering_by_triples(chord)));
  for (const auto& g : test::sample_graphs(50, 3, 20, 2)) {
    CHECK(clustering_coefficient(g) == Approx(test::clustering_by_triples(g)).epsilon(1e-12));
  }
}

TEST_CASE("energy") {
  CHECK(energy(Graph(6)) == Approx(0.0));
  CHECK(energy(Graph::complete(5)) == Approx(8.0).epsilon(1e-9));
  for (int n = 3; n <= 12; ++n) {
    CHECK(energy(Graph::complete(n)) == Approx(2.0 * (n - 1)).epsilon(1e-9));
    CHECK(energy(test::cycle(n)) == Approx(test::cycle_energy(n)).epsilon(1e-9));
  }
  Graph single(3);
  single.set_edge(0, 1);
  CHECK(energy(single) == Approx(2.0));
  CHECK(energy(test::cycle(5)) == Approx(6.472136).epsilon(1e-6));
}

TEST_CASE("degree statistics") {
  const auto c6 = degree_stats(test::cycle(6));
  CHECK(c6.max_degree == 2);
  CHECK(c6.std == 0.0);
  CHECK(c6.skewness == 0.0);
  CHECK(c6.kurtosis == 0.0);

  const auto star = degree_stats(test::star_graph(5));
  CHECK(star.max_degree == 4);
  CHECK(star.std == Approx(1.2));
  // m2 = 1.44, m3 = 2.592, m4 = 6.7392 for degrees {4, 1, 1, 1, 1}.
  CHECK(star.skewness == Approx(1.5));
  CHECK(star.kurtosis == Approx(3.25));

  const auto k5 = degree_stats(Graph::complete(5));
  CHECK(k5.max_degree == 4);
  CHECK(k5.std == 0.0);
}

TEST_CASE("diameter") {
  CHECK(diameter(test::example_graph()) == 3);
  CHECK(diameter(test::cycle(8)) == 4);
  CHECK(diameter(two_triangles()) == 6);
  for (int n = 3; n <= 20; ++n) CHECK(diameter(test::cycle(n)) == n / 2);
  for (const auto& g : test::sample_graphs(50, 3, 16, 9)) CHECK(diameter(g) == test::diameter_floyd(g));
}

TEST_CASE("degree fractions") {
  const auto c10 = degree_fractions(test::cycle(10));
  CHECK(c10.degree1 == 0.0);
  CHECK(c10.degree2 == 1.0);
  const auto star = degree_fractions(test::star_graph(10));
  CHECK(star.degree1 == Approx(0.9));
  CHECK(star.degree2 == 0.0);
  const auto p4 = degree_fractions(test::path(4));
  CHECK(p4.degree1 == 0.5);
  CHECK(p4.degree2 == 0.5);
}

TEST_CASE("feature vectors of canonical graphs") {
  auto expect = [](const FeatureVector& fv, std::array<double, kFeatureCount> want) {
    const auto got = fv.values();
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      INFO(kFeatureNames[f]);
      CHECK(got[f] == Approx(want[f]).epsilon(1e-6));
    }
  };
  expect(feature_vector(test::cycle(5)), {0.5, 0, test::cycle_energy(5), 2, 0, 0, 0, 2, 0, 1.0});
  expect(feature_vector(Graph::complete(5)), {1.0, 1.0, 8.0, 4, 0, 0, 0, 1, 0, 0});
  expect(feature_vector(Graph(5)), {0, 0, 0, 0, 0, 0, 0, 5, 0, 0});
}

TEST_CASE("feature names and value round trip") {
  CHECK(feature_index("density") == 0);
  CHECK(feature_index("pct_degree2") == 9);
  CHECK(feature_index("bogus") == kFeatureCount);
  const auto fv = feature_vector(test::petersen());
  CHECK(FeatureVector::from_values(fv.values()) == fv);
}

TEST_CASE("features are finite, pure and relabel invariant") {
  Rng rng(5);
  std::vector<Graph> graphs = test::sample_graphs(60, 3, 24, 13);
  for (const auto& spec : standard_sweep(16, 6, 2)) graphs.push_back(generate(spec));
  graphs.push_back(Graph(16));
  graphs.push_back(Graph::complete(16));
  for (const auto& g : graphs) {
    const auto fv = feature_vector(g);
    for (double v : fv.values()) CHECK(std::isfinite(v));
    CHECK(feature_vector(g) == fv);

    std::vector<Node> perm(static_cast<std::size_t>(g.n()));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    const auto moved = feature_vector(relabel(g, perm));
    CHECK(moved.energy == Approx(fv.energy).epsilon(1e-9));
    CHECK(moved.diameter == fv.diameter);
    CHECK(moved.clustering_coefficient == Approx(fv.clustering_coefficient).epsilon(1e-12));
    CHECK(moved.degree_std == Approx(fv.degree_std).epsilon(1e-12));
  }
}

TEST_CASE("jacobi reconstruction and trace on random adjacency matrices") {
  Rng rng(77);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = static_cast<int>(rng.between(3, 64));
    const Graph g = test::random_graph(n, rng.uniform01(), rng);
    const auto adj = g.adjacency_matrix();
    const auto sn = static_cast<std::size_t>(n);
    SquareMatrix a(sn);
    for (std::size_t i = 0; i < sn; ++i) {
      for (std::size_t j = 0; j < sn; ++j) a(i, j) = adj[i * sn + j];
    }
    const auto eig = jacobi_eigen(a);
    double trace = 0.0;
    for (double v : eig.values) trace += v;
    CHECK(std::abs(trace) < 1e-8);
    CHECK(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
    double worst = 0.0;
    for (std::size_t i = 0; i < sn; ++i) {
      for (std::size_t j = 0; j < sn; ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < sn; ++k) sum += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
        worst = std::max(worst, std::abs(sum - a(i, j)));
      }
    }
    CHECK(worst < 1e-8);
  }
}
