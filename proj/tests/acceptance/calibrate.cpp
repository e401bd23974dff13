// Prints the msls/exact equality rate on the admissibility sample.
#include <cstdio>

#include "hcp/solvers.hpp"
#include "samples.hpp"

int main() {
  const auto graphs = hcp::test::sample_graphs(500, 5, 16, 0);
  int equal = 0;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    hcp::MslsParams params;
    params.seed = k;
    const int exact = hcp::exact_hcn(graphs[k]).hcn;
    const int heuristic = hcp::msls_hcn(graphs[k], params).hcn;
    if (heuristic == exact) ++equal;
    if (heuristic != exact) std::printf("graph %zu n=%d exact=%d msls=%d\n", k, graphs[k].n(), exact, heuristic);
  }
  std::printf("equality rate %d/500 = %.4f\n", equal, equal / 500.0);
}
