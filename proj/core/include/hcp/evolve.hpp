#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hcp/graph.hpp"
#include "hcp/projection.hpp"
#include "hcp/rng.hpp"
#include "hcp/solvers.hpp"

namespace hcp {

enum class Direction { maximize, minimize };

// True iff a is strictly better than b in direction d.
constexpr bool better(double a, double b, Direction d) {
  return d == Direction::maximize ? a > b : a < b;
}

std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

struct EvolutionConfig {
  int n = 16;
  int pop_size = 20;
  int offspring_count = 30;
  std::array<double, 3> op_probs{1.0 / 3, 1.0 / 3, 1.0 / 3};  // clone, mutate, crossover
  double mutation_rate = 0.03;
  int generations = 100;
  int extension_generations = 100;
  int extension_window = 25;
  bool allow_extension = true;
  int hof_size = 300;
  int tournament_size = 2;
  Direction direction = Direction::maximize;
  std::uint64_t seed = 0;
  // Edge probability for the starting ER population; drawn from the seed when unset.
  std::optional<double> initial_p;
  // Threads used to evaluate offspring. Results never depend on this.
  int workers = 1;

  void validate() const;
};

struct Evaluation {
  double fitness = 0.0;
  std::optional<RuntimeSample> runtime;  // set by the runtime-difference mode
  std::optional<Point2> point;           // set by the landscape modes
};

// Must be safe to call concurrently on different graphs.
using FitnessFunction = std::function<Evaluation(const Graph&)>;

struct RuntimeDiffMode {
  SolverOptions solver;
};
// Maximizes the distance to the nearest landscape point.
struct NoveltyMode {
  std::vector<Point2> landscape;
  ProjectionModel model;
};
// Minimizes the distance to a chosen landscape coordinate.
struct TargetMode {
  Point2 target;
  ProjectionModel model;
};
// Arbitrary fitness, e.g. the edge-count surrogate used in tests.
struct CustomMode {
  FitnessFunction fitness;
};

using FitnessMode = std::variant<RuntimeDiffMode, NoveltyMode, TargetMode, CustomMode>;

std::string mode_name(const FitnessMode& mode);

double novelty_fitness(const Graph& g, std::span<const Point2> landscape,
                       const ProjectionModel& model);
double target_fitness(const Graph& g, Point2 target, const ProjectionModel& model);

struct GenerationStats {
  int generation = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double mean_edges = 0.0;
  double hof_best = 0.0;  // best fitness ever evaluated, up to this generation

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

void write_stats_csv(std::ostream& out, std::span<const GenerationStats> stats);

struct HofEntry {
  Graph graph;
  Evaluation evaluation;
  int generation = 0;  // when the graph was first evaluated
};

// Best distinct graphs seen during a run, best first. Equal fitness keeps
// insertion order.
class HallOfFame {
 public:
  HallOfFame(std::size_t capacity, Direction direction);

  // Returns false if the graph is already present or did not make the cut.
  bool insert(HofEntry entry);

  std::span<const HofEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  Direction direction() const { return direction_; }
  const HofEntry& best() const { return entries_.front(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::size_t capacity_;
  Direction direction_;
  std::vector<HofEntry> entries_;
  std::unordered_map<Graph, std::size_t> present_;
};

enum class MutationOp { add, remove, replace };

// Upper bound K on the number of operations: max(1, ceil(rate * |E|)).
int mutation_budget(const Graph& g, double rate);

// Applies k ~ U[1, K] operations, each uniformly add / remove / replace unless
// forced. Operations whose pool is empty leave the graph unchanged.
Graph mutate(const Graph& g, double rate, Rng& rng,
             std::optional<MutationOp> forced = std::nullopt);

// Two-point crossover with explicit cut points 0 <= p <= q <= L.
Graph crossover_at(const Graph& a, const Graph& b, std::size_t p, std::size_t q,
                   bool first_child);
// Draws the cut points and returns one of the two children at random.
Graph crossover(const Graph& a, const Graph& b, Rng& rng);

enum class OffspringOp { clone, mutate, crossover };

// Slot s draws from Rng(derive_seed(stream_seed, s)), so the result does not
// depend on evaluation order.
std::vector<Graph> make_offspring(std::span<const Graph> population,
                                  const EvolutionConfig& cfg, std::uint64_t stream_seed);

// Indices of the winners of `count` tournaments. Contestants are drawn
// uniformly with replacement; ties go to the first drawn.
std::vector<std::size_t> tournament_select(std::span<const double> fitness, int count,
                                           int tournament_size, Direction direction,
                                           Rng& rng);

// True iff the least-squares slope of the per-generation best fitness,
// signed by direction, exceeds 0.1% of the largest |best| in the window.
bool extension_rule(std::span<const double> best_per_generation, Direction direction);

struct EvolutionResult {
  HallOfFame hall_of_fame;
  std::vector<GenerationStats> stats;  // entry 0 is the starting population
  Direction direction = Direction::maximize;
  bool extended = false;
  std::size_t evaluations = 0;  // distinct graphs evaluated
};

EvolutionResult run_evolution(const EvolutionConfig& cfg, const FitnessMode& mode,
                              std::optional<std::vector<Graph>> initial = std::nullopt);

}  // namespace hcp
