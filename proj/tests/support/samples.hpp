#pragma once

#include <vector>

#include "hcp/graph.hpp"
#include "hcp/rng.hpp"

namespace hcp::test {

inline Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (std::size_t k = 0; k < g.bit_count(); ++k) g.set_bit(k, rng.bernoulli(p));
  return g;
}

// `count` graphs with n uniform in [n_min, n_max] and edge probability
// uniform in [0, 1), all drawn from one stream.
inline std::vector<Graph> sample_graphs(int count, int n_min, int n_max, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const int n = static_cast<int>(rng.between(n_min, n_max));
    const double p = rng.uniform01();
    out.push_back(random_graph(n, p, rng));
  }
  return out;
}

// Every graph on n nodes, enumerated by bit pattern.
inline std::vector<Graph> all_graphs(int n) {
  const std::size_t bits = pair_count(n);
  std::vector<Graph> out;
  out.reserve(std::size_t{1} << bits);
  for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
    Graph g(n);
    for (std::size_t k = 0; k < bits; ++k) g.set_bit(k, (mask >> k) & 1U);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace hcp::test
