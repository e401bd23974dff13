#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hcp/graph.hpp"

namespace hcp {

inline constexpr int kDefaultExactLimit = 20;
inline constexpr int kBruteForceLimit = 9;

// Complete 0/1-weighted graph: weight(i, j) = 0 iff {i, j} is an edge of the
// source graph. The weights are stored as a bitvector parallel to Graph's.
class TspInstance {
 public:
  explicit TspInstance(Graph unit_weights) : unit_(std::move(unit_weights)) {}

  int n() const { return unit_.n(); }
  int weight(Node i, Node j) const { return unit_.has_edge(i, j) ? 1 : 0; }
  std::size_t pair_count() const { return unit_.bit_count(); }
  // Bit set = weight 1.
  const Graph& unit_pairs() const { return unit_; }

 private:
  Graph unit_;
};

TspInstance reduce_to_tsp(const Graph& g);

struct TspTour {
  int cost = 0;
  std::vector<Node> tour;  // starts at node 0
};

// Held-Karp dynamic programming over subsets with node 0 fixed as the start.
// Among optimal tours the lexicographically smallest sequence is returned.
TspTour held_karp(const TspInstance& tsp, int limit = kDefaultExactLimit);

struct SolveResult {
  int hcn = 0;
  std::vector<Edge> added_edges;  // (i < j), ascending
  std::vector<Node> tour;
  double cpu_seconds = 0.0;
};

// Pairs of consecutive tour nodes absent from g, normalized and sorted.
std::vector<Edge> missing_edges_of(const Graph& g, std::span<const Node> tour);

SolveResult exact_hcn(const Graph& g, int exact_limit = kDefaultExactLimit);

// Exhaustive minimum over the (n-1)!/2 distinct cycles; n <= 9.
int brute_force_hcn(const Graph& g);

struct MslsParams {
  int restarts = 32;
  int max_no_improve = 0;  // 0 means 50 * n
  std::uint64_t seed = 0;
  bool early_stop_at_zero = true;

  int resolved_max_no_improve(int n) const {
    return max_no_improve > 0 ? max_no_improve : 50 * n;
  }
};

// Multi-start local search. Every restart begins from a uniform random tour
// and runs steepest-descent passes that alternate between the 2-opt and the
// single-node Or-opt neighbourhood, minimising the number of tour pairs that
// are not graph edges. Improving moves reset the stall counter; otherwise
// every candidate examined in the pass is added to it and, on a plateau, a
// random zero-delta move is taken. A restart ends once the counter reaches
// max_no_improve.
SolveResult msls_hcn(const Graph& g, const MslsParams& params);

enum class SolverKind { exact, heuristic };

struct SolverOptions {
  int exact_limit = kDefaultExactLimit;
  MslsParams msls;
  int repeats = 1;  // timed solves per measurement; the median time is kept
};

// CPU time consumed by the calling thread, in seconds.
double thread_cpu_seconds();

// Runs the chosen solver and stores the thread CPU time of the solve itself.
SolveResult timed_solve(SolverKind which, const Graph& g, const SolverOptions& options);

struct RuntimeSample {
  double t_exact = 0.0;
  double t_heuristic = 0.0;
  int hcn_exact = 0;
  int hcn_heuristic = 0;

  double fitness() const { return t_heuristic - t_exact; }
};

RuntimeSample measure_runtimes(const Graph& g, const SolverOptions& options);

// Heuristic CPU seconds minus exact CPU seconds.
double runtime_difference_fitness(const Graph& g, const SolverOptions& options);

}  // namespace hcp
