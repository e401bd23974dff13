#include "hcp/features.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hcp/eigen.hpp"

namespace hcp {

std::array<double, kFeatureCount> FeatureVector::values() const {
  return {density,
          clustering_coefficient,
          energy,
          static_cast<double>(max_degree),
          degree_std,
          degree_skewness,
          degree_kurtosis,
          static_cast<double>(diameter),
          pct_degree1,
          pct_degree2};
}

FeatureVector FeatureVector::from_values(const std::array<double, kFeatureCount>& v) {
  FeatureVector f;
  f.density = v[0];
  f.clustering_coefficient = v[1];
  f.energy = v[2];
  f.max_degree = static_cast<int>(std::lround(v[3]));
  f.degree_std = v[4];
  f.degree_skewness = v[5];
  f.degree_kurtosis = v[6];
  f.diameter = static_cast<int>(std::lround(v[7]));
  f.pct_degree1 = v[8];
  f.pct_degree2 = v[9];
  return f;
}

std::size_t feature_index(std::string_view name) {
  const auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), name);
  return static_cast<std::size_t>(it - kFeatureNames.begin());
}

double density(const Graph& g) {
  return static_cast<double>(g.edge_count()) / static_cast<double>(g.bit_count());
}

double clustering_coefficient(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  const auto adj = g.adjacency_matrix();
  std::vector<std::size_t> nbrs;
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    nbrs.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[v * n + u]) nbrs.push_back(u);
    }
    const std::size_t d = nbrs.size();
    if (d < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) links += adj[nbrs[a] * n + nbrs[b]];
    }
    total += static_cast<double>(links) / (0.5 * static_cast<double>(d * (d - 1)));
  }
  return total / static_cast<double>(n);
}

double energy(const Graph& g) {
  if (g.edge_count() == 0) return 0.0;
  const auto n = static_cast<std::size_t>(g.n());
  SquareMatrix a(n);
  for (auto [i, j] : g.edges()) {
    a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
    a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = 1.0;
  }
  const auto eig = jacobi_eigen(std::move(a));
  double sum = 0.0;
  for (double lambda : eig.values) sum += std::abs(lambda);
  return sum;
}

DegreeStats degree_stats(const Graph& g) {
  const auto deg = degree_sequence(g);
  const auto count = static_cast<double>(deg.size());
  DegreeStats s;
  s.max_degree = *std::max_element(deg.begin(), deg.end());
  double mean = 0.0;
  for (int d : deg) mean += d;
  mean /= count;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (int d : deg) {
    const double x = d - mean;
    m2 += x * x;
    m3 += x * x * x;
    m4 += x * x * x * x;
  }
  m2 /= count;
  m3 /= count;
  m4 /= count;
  s.std = std::sqrt(m2);
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  return s;
}

int diameter(const Graph& g) {
  const int n = g.n();
  const auto sn = static_cast<std::size_t>(n);
  const auto adj = g.adjacency_matrix();
  std::vector<int> dist(sn);
  std::deque<std::size_t> queue;
  int longest = 0;
  for (std::size_t s = 0; s < sn; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.assign(1, s);
    std::size_t reached = 1;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (std::size_t u = 0; u < sn; ++u) {
        if (adj[v * sn + u] && dist[u] < 0) {
          dist[u] = dist[v] + 1;
          longest = std::max(longest, dist[u]);
          ++reached;
          queue.push_back(u);
        }
      }
    }
    if (reached < sn) return n;
  }
  return longest;
}

DegreeFractions degree_fractions(const Graph& g) {
  const auto deg = degree_sequence(g);
  DegreeFractions f;
  for (int d : deg) {
    if (d == 1) f.degree1 += 1.0;
    if (d == 2) f.degree2 += 1.0;
  }
  f.degree1 /= static_cast<double>(deg.size());
  f.degree2 /= static_cast<double>(deg.size());
  return f;
}

FeatureVector feature_vector(const Graph& g) {
  FeatureVector f;
  f.density = density(g);
  f.clustering_coefficient = clustering_coefficient(g);
  f.energy = energy(g);
  const auto stats = degree_stats(g);
  f.max_degree = stats.max_degree;
  f.degree_std = stats.std;
  f.degree_skewness = stats.skewness;
  f.degree_kurtosis = stats.kurtosis;
  f.diameter = diameter(g);
  const auto fractions = degree_fractions(g);
  f.pct_degree1 = fractions.degree1;
  f.pct_degree2 = fractions.degree2;
  return f;
}

}  // namespace hcp
