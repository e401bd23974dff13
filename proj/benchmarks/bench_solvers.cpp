#include <benchmark/benchmark.h>

#include "hcp/evolve.hpp"
#include "hcp/generators.hpp"
#include "hcp/solvers.hpp"

namespace {

hcp::Graph er(int n, double p) { return hcp::generate({hcp::ErdosRenyi{p}, n, 17}); }

void BM_HeldKarp(benchmark::State& state) {
  const auto g = er(static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(hcp::exact_hcn(g).hcn);
}
BENCHMARK(BM_HeldKarp)->DenseRange(10, 18, 2)->Unit(benchmark::kMillisecond);

// p = 0.1 keeps the graph far from Hamiltonian, so every restart runs to the
// stall limit; p = 0.6 usually stops at the first zero-cost tour.
void BM_Msls(benchmark::State& state) {
  const auto g = er(static_cast<int>(state.range(0)), state.range(1) / 10.0);
  hcp::MslsParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hcp::msls_hcn(g, params).hcn);
    ++params.seed;
  }
}
BENCHMARK(BM_Msls)->ArgsProduct({{16, 50}, {1, 6}})->Unit(benchmark::kMillisecond);

void BM_MakeOffspring(benchmark::State& state) {
  hcp::EvolutionConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  std::vector<hcp::Graph> pop;
  for (int i = 0; i < cfg.pop_size; ++i) pop.push_back(hcp::generate({hcp::ErdosRenyi{0.3}, cfg.n, static_cast<std::uint64_t>(i)}));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hcp::make_offspring(pop, cfg, seed++));
}
BENCHMARK(BM_MakeOffspring)->Arg(16)->Arg(50);

}  // namespace
