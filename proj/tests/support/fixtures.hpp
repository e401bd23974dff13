#pragma once

#include <vector>

#include "hcp/graph.hpp"

namespace hcp::test {

// The five-node example graph: triangle 0-1-2 with a tail 2-3-4.
// Not Hamiltonian; adding {0, 4} closes the cycle 0-1-2-3-4.
inline Graph example_graph() {
  const std::vector<Edge> edges{{0, 2}, {0, 1}, {1, 2}, {2, 3}, {3, 4}};
  return Graph::from_edges(5, edges);
}

// The encoding example: edges {1,3},{1,4},{1,5},{2,3},{3,4} in 1-based labels.
inline Graph encoding_example() {
  const std::vector<Edge> edges{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}};
  return Graph::from_edges(5, edges);
}

inline Graph cycle(int n) {
  Graph g(n);
  for (Node v = 0; v < n; ++v) g.set_edge(v, (v + 1) % n);
  return g;
}

inline Graph path(int n) {
  Graph g(n);
  for (Node v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
  return g;
}

inline Graph star_graph(int n) {
  Graph g(n);
  for (Node v = 1; v < n; ++v) g.set_edge(0, v);
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (Node v = 0; v < 5; ++v) {
    g.set_edge(v, (v + 1) % 5);          // outer cycle
    g.set_edge(v, v + 5);                // spokes
    g.set_edge(5 + v, 5 + (v + 2) % 5);  // inner pentagram
  }
  return g;
}

inline Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (Node i = 0; i < a; ++i) {
    for (Node j = a; j < a + b; ++j) g.set_edge(i, j);
  }
  return g;
}

}  // namespace hcp::test
