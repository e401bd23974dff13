#include <benchmark/benchmark.h>

#include "hcp/eigen.hpp"
#include "hcp/features.hpp"
#include "hcp/generators.hpp"
#include "hcp/projection.hpp"

namespace {

void BM_FeatureVector(benchmark::State& state) {
  const auto g = hcp::generate({hcp::ErdosRenyi{0.3}, static_cast<int>(state.range(0)), 3});
  for (auto _ : state) benchmark::DoNotOptimize(hcp::feature_vector(g));
}
BENCHMARK(BM_FeatureVector)->Arg(16)->Arg(50)->Arg(64);

void BM_Jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto adj = hcp::generate({hcp::ErdosRenyi{0.3}, static_cast<int>(n), 5}).adjacency_matrix();
  hcp::SquareMatrix m(n);
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = adj[i];
  for (auto _ : state) benchmark::DoNotOptimize(hcp::jacobi_eigen(m).values);
}
BENCHMARK(BM_Jacobi)->Arg(10)->Arg(16)->Arg(64);

void BM_Project(benchmark::State& state) {
  std::vector<hcp::FeatureVector> rows;
  for (std::uint64_t s = 0; s < 200; ++s) {
    rows.push_back(hcp::feature_vector(hcp::generate({hcp::ErdosRenyi{(s % 19 + 0.5) / 20.0}, 16, s})));
  }
  const auto model = hcp::fit_projection(rows);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hcp::project(model, rows[k++ % rows.size()]));
}
BENCHMARK(BM_Project);

}  // namespace
