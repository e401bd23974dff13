#include "hcp/solvers.hpp"

#include <time.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "hcp/error.hpp"
#include "hcp/rng.hpp"

namespace hcp {

TspInstance reduce_to_tsp(const Graph& g) {
  Graph unit(g.n());
  for (std::size_t k = 0; k < g.bit_count(); ++k) {
    if (!g.bit(k)) unit.set_bit(k, true);
  }
  return TspInstance(std::move(unit));
}

TspTour held_karp(const TspInstance& tsp, int limit) {
  const int n = tsp.n();
  // The DP table holds 2^(n-1) * (n-1) bytes; past 24 nodes it no longer fits
  // in memory on ordinary machines.
  if (n > std::min(limit, 24)) {
    throw CapacityExceeded("exact solver limited to n <= " + std::to_string(std::min(limit, 24)) +
                           ", got n = " + std::to_string(n));
  }
  const auto sn = static_cast<std::size_t>(n);
  std::vector<std::uint8_t> w(sn * sn, 0);
  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      w[static_cast<std::size_t>(i) * sn + static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(i == j ? 0 : tsp.weight(i, j));
    }
  }
  auto weight = [&](Node a, Node b) {
    return w[static_cast<std::size_t>(a) * sn + static_cast<std::size_t>(b)];
  };

  // Node v >= 1 is bit v - 1. best[mask * m + b] is the cheapest path that
  // starts at node 0, visits exactly the nodes in mask and ends at node b + 1.
  const int m = n - 1;
  const auto sm = static_cast<std::size_t>(m);
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  constexpr std::uint8_t kInf = std::numeric_limits<std::uint8_t>::max();
  std::vector<std::uint8_t> best((static_cast<std::size_t>(full) + 1) * sm, kInf);
  for (int b = 0; b < m; ++b) {
    best[(std::size_t{1} << b) * sm + static_cast<std::size_t>(b)] = weight(0, b + 1);
  }
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const std::uint8_t* row = &best[static_cast<std::size_t>(mask) * sm];
    for (std::uint32_t in = mask; in != 0; in &= in - 1) {
      const int b = std::countr_zero(in);
      if (row[b] == kInf) continue;
      const std::uint8_t* wb = &w[static_cast<std::size_t>(b + 1) * sn];
      for (std::uint32_t out = full & ~mask; out != 0; out &= out - 1) {
        const int c = std::countr_zero(out);
        const std::uint32_t next = mask | (std::uint32_t{1} << c);
        auto& slot = best[static_cast<std::size_t>(next) * sm + static_cast<std::size_t>(c)];
        const auto cand = static_cast<std::uint8_t>(row[b] + wb[c + 1]);
        if (cand < slot) slot = cand;
      }
    }
  }

  // Cheapest way to leave `from`, visit every node of `remaining` and close
  // the cycle at node 0.
  auto completion = [&](Node from, std::uint32_t remaining) -> int {
    if (remaining == 0) return weight(from, 0);
    int out = std::numeric_limits<int>::max();
    const std::uint8_t* row = &best[static_cast<std::size_t>(remaining) * sm];
    for (int b = 0; b < m; ++b) {
      if ((remaining >> b) & 1U) out = std::min(out, row[b] + weight(b + 1, from));
    }
    return out;
  };

  TspTour result;
  result.cost = completion(0, full);
  result.tour.reserve(sn);
  result.tour.push_back(0);
  Node current = 0;
  std::uint32_t remaining = full;
  int to_go = result.cost;
  while (remaining != 0) {
    for (int b = 0; b < m; ++b) {
      if (!((remaining >> b) & 1U)) continue;
      const std::uint32_t rest = remaining & ~(std::uint32_t{1} << b);
      const int via = weight(current, b + 1) + completion(b + 1, rest);
      if (via == to_go) {
        to_go -= weight(current, b + 1);
        current = b + 1;
        remaining = rest;
        result.tour.push_back(current);
        break;
      }
    }
  }
  return result;
}

std::vector<Edge> missing_edges_of(const Graph& g, std::span<const Node> tour) {
  std::vector<Edge> out;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    Node a = tour[k];
    Node b = tour[(k + 1) % tour.size()];
    if (!g.has_edge(a, b)) out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SolveResult exact_hcn(const Graph& g, int exact_limit) {
  auto tour = held_karp(reduce_to_tsp(g), exact_limit);
  SolveResult result;
  result.hcn = tour.cost;
  result.added_edges = missing_edges_of(g, tour.tour);
  result.tour = std::move(tour.tour);
  return result;
}

int brute_force_hcn(const Graph& g) {
  const int n = g.n();
  if (n > kBruteForceLimit) {
    throw CapacityExceeded("brute force limited to n <= " +
                           std::to_string(kBruteForceLimit) + ", got n = " +
                           std::to_string(n));
  }
  const auto adj = g.adjacency_matrix();
  const auto sn = static_cast<std::size_t>(n);
  std::vector<Node> tour(sn);
  std::iota(tour.begin(), tour.end(), 0);
  int best = n;
  do {
    // Each cycle appears twice (once per direction); keep one orientation.
    if (tour[1] > tour[sn - 1]) continue;
    int missing = 0;
    for (std::size_t k = 0; k < sn; ++k) {
      const auto a = static_cast<std::size_t>(tour[k]);
      const auto b = static_cast<std::size_t>(tour[(k + 1) % sn]);
      missing += adj[a * sn + b] ? 0 : 1;
    }
    best = std::min(best, missing);
  } while (std::next_permutation(tour.begin() + 1, tour.end()));
  return best;
}

namespace {

class LocalSearch {
 public:
  LocalSearch(const Graph& g, const MslsParams& params)
      : n_(g.n()),
        adj_(g.adjacency_matrix()),
        params_(params),
        stall_limit_(params.resolved_max_no_improve(g.n())),
        rng_(params.seed) {}

  std::vector<Node> run() {
    std::vector<Node> best;
    int best_cost = std::numeric_limits<int>::max();
    std::vector<Node> tour(static_cast<std::size_t>(n_));
    for (int r = 0; r < params_.restarts; ++r) {
      std::iota(tour.begin(), tour.end(), 0);
      rng_.shuffle(tour.begin(), tour.end());
      const int cost = descend(tour);
      if (cost < best_cost) {
        best_cost = cost;
        best = tour;
      }
      if (best_cost == 0 && params_.early_stop_at_zero) break;
    }
    return best;
  }

 private:
  int missing(Node a, Node b) const {
    return adj_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(b)]
               ? 0
               : 1;
  }

  int tour_cost(const std::vector<Node>& t) const {
    int c = 0;
    for (std::size_t k = 0; k < t.size(); ++k) c += missing(t[k], t[(k + 1) % t.size()]);
    return c;
  }

  struct Move {
    int delta = std::numeric_limits<int>::max();
    int a = -1;
    int b = -1;
  };

  // Steepest move in the chosen neighbourhood. Zero-delta moves are sampled
  // uniformly (reservoir) so that plateaus get explored.
  struct PassResult {
    Move best;
    Move sideways;
    int examined = 0;
  };

  template <typename DeltaFn>
  void consider(PassResult& pass, int& sideways_seen, int a, int b, DeltaFn&& delta_fn) {
    const int delta = delta_fn();
    ++pass.examined;
    if (delta < pass.best.delta) pass.best = {delta, a, b};
    if (delta == 0) {
      ++sideways_seen;
      if (rng_.below(static_cast<std::uint64_t>(sideways_seen)) == 0) pass.sideways = {0, a, b};
    }
  }

  PassResult two_opt_pass(const std::vector<Node>& t) {
    PassResult pass;
    int sideways_seen = 0;
    const int n = n_;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        consider(pass, sideways_seen, i, j, [&] {
          const Node ti = t[static_cast<std::size_t>(i)];
          const Node ti1 = t[static_cast<std::size_t>(i + 1)];
          const Node tj = t[static_cast<std::size_t>(j)];
          const Node tj1 = t[static_cast<std::size_t>((j + 1) % n)];
          return missing(ti, tj) + missing(ti1, tj1) - missing(ti, ti1) - missing(tj, tj1);
        });
      }
    }
    return pass;
  }

  static void apply_two_opt(std::vector<Node>& t, int i, int j) {
    std::reverse(t.begin() + i + 1, t.begin() + j + 1);
  }

  // Move node at position i so that it sits between the nodes currently at
  // positions k and k + 1.
  PassResult or_opt_pass(const std::vector<Node>& t) {
    PassResult pass;
    int sideways_seen = 0;
    const int n = n_;
    auto at = [&](int pos) { return t[static_cast<std::size_t>((pos % n + n) % n)]; };
    for (int i = 0; i < n; ++i) {
      const Node v = at(i);
      const Node prev = at(i - 1);
      const Node next = at(i + 1);
      const int removal = missing(prev, next) - missing(prev, v) - missing(v, next);
      for (int k = 0; k < n; ++k) {
        if (k == i || k == (i - 1 + n) % n) continue;
        consider(pass, sideways_seen, i, k, [&] {
          const Node a = at(k);
          const Node b = at(k + 1);
          return removal + missing(a, v) + missing(v, b) - missing(a, b);
        });
      }
    }
    return pass;
  }

  void apply_or_opt(std::vector<Node>& t, int i, int k) const {
    const Node v = t[static_cast<std::size_t>(i)];
    const Node after = t[static_cast<std::size_t>((k + 1) % n_)];
    t.erase(t.begin() + i);
    auto pos = std::find(t.begin(), t.end(), after);
    t.insert(pos, v);
  }

  int descend(std::vector<Node>& t) {
    int cost = tour_cost(t);
    if (n_ <= 3) return cost;
    int stalled = 0;
    bool use_two_opt = true;
    while (stalled < stall_limit_) {
      if (cost == 0 && params_.early_stop_at_zero) break;
      const PassResult pass = use_two_opt ? two_opt_pass(t) : or_opt_pass(t);
      if (pass.best.delta < 0) {
        if (use_two_opt) {
          apply_two_opt(t, pass.best.a, pass.best.b);
        } else {
          apply_or_opt(t, pass.best.a, pass.best.b);
        }
        cost += pass.best.delta;
        stalled = 0;
      } else {
        stalled += std::max(pass.examined, 1);
        if (pass.sideways.a >= 0) {
          if (use_two_opt) {
            apply_two_opt(t, pass.sideways.a, pass.sideways.b);
          } else {
            apply_or_opt(t, pass.sideways.a, pass.sideways.b);
          }
        }
      }
      use_two_opt = !use_two_opt;
    }
    return cost;
  }

  int n_;
  std::vector<std::uint8_t> adj_;
  MslsParams params_;
  int stall_limit_;
  Rng rng_;
};

}  // namespace

SolveResult msls_hcn(const Graph& g, const MslsParams& params) {
  if (params.restarts < 1) throw InvalidArgument("restarts must be positive");
  if (params.max_no_improve < 0) throw InvalidArgument("max_no_improve must be positive");
  LocalSearch search(g, params);
  auto tour = search.run();
  std::rotate(tour.begin(), std::find(tour.begin(), tour.end(), 0), tour.end());
  SolveResult result;
  result.added_edges = missing_edges_of(g, tour);
  result.hcn = static_cast<int>(result.added_edges.size());
  result.tour = std::move(tour);
  return result;
}

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

SolveResult timed_solve(SolverKind which, const Graph& g, const SolverOptions& options) {
  const int repeats = std::max(options.repeats, 1);
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  SolveResult result;
  for (int r = 0; r < repeats; ++r) {
    const double start = thread_cpu_seconds();
    SolveResult run = which == SolverKind::exact ? exact_hcn(g, options.exact_limit)
                                                 : msls_hcn(g, options.msls);
    times.push_back(std::max(0.0, thread_cpu_seconds() - start));
    if (r == 0) result = std::move(run);
  }
  std::sort(times.begin(), times.end());
  const auto mid = times.size() / 2;
  result.cpu_seconds = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  return result;
}

RuntimeSample measure_runtimes(const Graph& g, const SolverOptions& options) {
  const auto exact = timed_solve(SolverKind::exact, g, options);
  const auto heuristic = timed_solve(SolverKind::heuristic, g, options);
  return {exact.cpu_seconds, heuristic.cpu_seconds, exact.hcn, heuristic.hcn};
}

double runtime_difference_fitness(const Graph& g, const SolverOptions& options) {
  return measure_runtimes(g, options).fitness();
}

}  // namespace hcp
