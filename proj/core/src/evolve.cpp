#include "hcp/evolve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "hcp/error.hpp"
#include "hcp/features.hpp"
#include "hcp/generators.hpp"

namespace hcp {

namespace {

// Stream tags for derive_seed.
constexpr std::uint64_t kInitialP = 1;
constexpr std::uint64_t kInitialGraph = 2;
constexpr std::uint64_t kOffspring = 3;
constexpr std::uint64_t kSelection = 4;

std::size_t pick_uniform_bit(const Graph& g, bool value, std::size_t pool, Rng& rng) {
  std::size_t target = rng.below(pool);
  for (std::size_t k = 0; k < g.bit_count(); ++k) {
    if (g.bit(k) == value) {
      if (target == 0) return k;
      --target;
    }
  }
  return g.bit_count();
}

struct ModeBinding {
  FitnessFunction fitness;
  Direction direction;
};

ModeBinding bind(const FitnessMode& mode, Direction configured) {
  if (const auto* m = std::get_if<RuntimeDiffMode>(&mode)) {
    const SolverOptions options = m->solver;
    return {[options](const Graph& g) {
              Evaluation e;
              e.runtime = measure_runtimes(g, options);
              e.fitness = e.runtime->fitness();
              return e;
            },
            configured};
  }
  if (const auto* m = std::get_if<NoveltyMode>(&mode)) {
    if (m->landscape.empty()) throw InvalidArgument("novelty landscape must not be empty");
    const auto* mode_ptr = m;
    return {[mode_ptr](const Graph& g) {
              Evaluation e;
              e.point = project(mode_ptr->model, feature_vector(g));
              double nearest = std::numeric_limits<double>::infinity();
              for (const auto& q : mode_ptr->landscape) nearest = std::min(nearest, distance(*e.point, q));
              e.fitness = nearest;
              return e;
            },
            Direction::maximize};
  }
  if (const auto* m = std::get_if<TargetMode>(&mode)) {
    const auto* mode_ptr = m;
    return {[mode_ptr](const Graph& g) {
              Evaluation e;
              e.point = project(mode_ptr->model, feature_vector(g));
              e.fitness = distance(*e.point, mode_ptr->target);
              return e;
            },
            Direction::minimize};
  }
  const auto& custom = std::get<CustomMode>(mode);
  if (!custom.fitness) throw InvalidArgument("custom fitness mode without a function");
  return {custom.fitness, configured};
}

// Evaluates graphs not yet in the cache. Work is claimed from an atomic
// counter; results land in fixed slots, so the cache contents do not depend on
// the schedule.
class Evaluator {
 public:
  Evaluator(FitnessFunction fn, int workers) : fn_(std::move(fn)), workers_(std::max(workers, 1)) {}

  std::vector<Evaluation> evaluate(std::span<const Graph> graphs) {
    std::vector<const Graph*> pending;
    for (const auto& g : graphs) {
      if (!cache_.contains(g) &&
          std::none_of(pending.begin(), pending.end(), [&](const Graph* p) { return *p == g; })) {
        pending.push_back(&g);
      }
    }
    std::vector<Evaluation> fresh(pending.size());
    run_parallel(pending, fresh);
    for (std::size_t k = 0; k < pending.size(); ++k) cache_.emplace(*pending[k], fresh[k]);
    evaluations_ += pending.size();

    std::vector<Evaluation> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) out.push_back(cache_.at(g));
    return out;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  void run_parallel(const std::vector<const Graph*>& pending, std::vector<Evaluation>& out) {
    const auto threads = std::min<std::size_t>(static_cast<std::size_t>(workers_), pending.size());
    if (threads <= 1) {
      for (std::size_t k = 0; k < pending.size(); ++k) out[k] = fn_(*pending[k]);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t k = next++; k < pending.size(); k = next++) {
        try {
          out[k] = fn_(*pending[k]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  FitnessFunction fn_;
  int workers_;
  std::unordered_map<Graph, Evaluation> cache_;
  std::size_t evaluations_ = 0;
};

GenerationStats summarize(int generation, std::span<const Graph> population,
                          std::span<const double> fitness) {
  GenerationStats s;
  s.generation = generation;
  s.min = *std::min_element(fitness.begin(), fitness.end());
  s.max = *std::max_element(fitness.begin(), fitness.end());
  double sum = 0.0;
  double edges = 0.0;
  for (double f : fitness) sum += f;
  for (const auto& g : population) edges += static_cast<double>(g.edge_count());
  // Clamp guards the min <= mean <= max invariant against rounding.
  s.mean = std::clamp(sum / static_cast<double>(fitness.size()), s.min, s.max);
  s.mean_edges = edges / static_cast<double>(population.size());
  return s;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::maximize ? "maximize" : "minimize"; }

Direction parse_direction(const std::string& text) {
  if (text == "maximize" || text == "max") return Direction::maximize;
  if (text == "minimize" || text == "min") return Direction::minimize;
  throw InvalidArgument("direction must be maximize or minimize, got '" + text + "'");
}

void EvolutionConfig::validate() const {
  if (pop_size < 1 || offspring_count < 1 || hof_size < 1 || tournament_size < 1) {
    throw InvalidArgument("population, offspring, hall of fame and tournament sizes must be positive");
  }
  if (generations < 0 || extension_generations < 0 || extension_window < 2) {
    throw InvalidArgument("generation counts must be non-negative and the window at least 2");
  }
  double sum = 0.0;
  for (double p : op_probs) {
    if (p < 0.0) throw InvalidArgument("operator probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("operator probabilities must sum to 1");
  if (!(mutation_rate > 0.0 && mutation_rate <= 1.0)) {
    throw InvalidArgument("mutation rate must lie in (0, 1]");
  }
  if (op_probs[2] > 0.0 && pop_size < 2) {
    throw InvalidArgument("crossover needs a population of at least 2");
  }
  if (initial_p && !(*initial_p >= 0.0 && *initial_p <= 1.0)) {
    throw InvalidArgument("initial edge probability must lie in [0, 1]");
  }
  if (n < kMinNodes || n > kMaxNodes) throw InvalidArgument("node count out of range");
}

std::string mode_name(const FitnessMode& mode) {
  switch (mode.index()) {
    case 0: return "hardness";
    case 1: return "novelty";
    case 2: return "target";
    default: return "custom";
  }
}

double novelty_fitness(const Graph& g, std::span<const Point2> landscape,
                       const ProjectionModel& model) {
  if (landscape.empty()) throw InvalidArgument("novelty landscape must not be empty");
  const Point2 p = project(model, feature_vector(g));
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& q : landscape) nearest = std::min(nearest, distance(p, q));
  return nearest;
}

double target_fitness(const Graph& g, Point2 target, const ProjectionModel& model) {
  return distance(project(model, feature_vector(g)), target);
}

void write_stats_csv(std::ostream& out, std::span<const GenerationStats> stats) {
  const auto precision = out.precision(17);
  out << "gen,min,mean,max,mean_edges,hof_best\n";
  for (const auto& s : stats) {
    out << s.generation << ',' << s.min << ',' << s.mean << ',' << s.max << ',' << s.mean_edges
        << ',' << s.hof_best << '\n';
  }
  out.precision(precision);
}

HallOfFame::HallOfFame(std::size_t capacity, Direction direction)
    : capacity_(capacity), direction_(direction) {
  if (capacity == 0) throw InvalidArgument("hall of fame capacity must be positive");
}

bool HallOfFame::insert(HofEntry entry) {
  if (present_.contains(entry.graph)) return false;
  const auto pos = std::upper_bound(
      entries_.begin(), entries_.end(), entry.evaluation.fitness,
      [this](double f, const HofEntry& e) { return better(f, e.evaluation.fitness, direction_); });
  if (pos == entries_.end() && entries_.size() >= capacity_) return false;
  present_.emplace(entry.graph, 0);
  entries_.insert(pos, std::move(entry));
  if (entries_.size() > capacity_) {
    present_.erase(entries_.back().graph);
    entries_.pop_back();
  }
  return true;
}

int mutation_budget(const Graph& g, double rate) {
  const double scaled = rate * static_cast<double>(g.edge_count());
  return std::max(1, static_cast<int>(std::ceil(scaled - 1e-9)));
}

Graph mutate(const Graph& g, double rate, Rng& rng, std::optional<MutationOp> forced) {
  Graph out = g;
  const int ops = static_cast<int>(rng.between(1, mutation_budget(g, rate)));
  for (int k = 0; k < ops; ++k) {
    const auto op = forced ? *forced : static_cast<MutationOp>(rng.below(3));
    const std::size_t present = out.edge_count();
    const std::size_t absent = out.bit_count() - present;
    switch (op) {
      case MutationOp::add:
        if (absent > 0) out.set_bit(pick_uniform_bit(out, false, absent, rng), true);
        break;
      case MutationOp::remove:
        if (present > 0) out.set_bit(pick_uniform_bit(out, true, present, rng), false);
        break;
      case MutationOp::replace:
        if (present > 0 && absent > 0) {
          const auto drop = pick_uniform_bit(out, true, present, rng);
          const auto add = pick_uniform_bit(out, false, absent, rng);
          out.set_bit(drop, false);
          out.set_bit(add, true);
        }
        break;
    }
  }
  return out;
}

Graph crossover_at(const Graph& a, const Graph& b, std::size_t p, std::size_t q,
                   bool first_child) {
  if (a.n() != b.n()) throw InvalidArgument("crossover parents must have the same node count");
  if (p > q || q > a.bit_count()) throw InvalidArgument("crossover cut points out of order");
  const Graph& outer = first_child ? a : b;
  const Graph& inner = first_child ? b : a;
  Graph child = outer;
  for (std::size_t k = p; k < q; ++k) child.set_bit(k, inner.bit(k));
  return child;
}

Graph crossover(const Graph& a, const Graph& b, Rng& rng) {
  if (a.n() != b.n()) throw InvalidArgument("crossover parents must have the same node count");
  const std::uint64_t slots = a.bit_count() + 1;
  auto p = static_cast<std::size_t>(rng.below(slots));
  auto q = static_cast<std::size_t>(rng.below(slots));
  if (p > q) std::swap(p, q);
  return crossover_at(a, b, p, q, rng.below(2) == 0);
}

std::vector<Graph> make_offspring(std::span<const Graph> population, const EvolutionConfig& cfg,
                                  std::uint64_t stream_seed) {
  if (population.size() != static_cast<std::size_t>(cfg.pop_size)) {
    throw InvalidArgument("population size does not match the configuration");
  }
  std::vector<Graph> offspring;
  offspring.reserve(static_cast<std::size_t>(cfg.offspring_count));
  const auto size = static_cast<std::uint64_t>(population.size());
  for (int slot = 0; slot < cfg.offspring_count; ++slot) {
    Rng rng(derive_seed(stream_seed, static_cast<std::uint64_t>(slot)));
    const double u = rng.uniform01();
    OffspringOp op = OffspringOp::crossover;
    if (u < cfg.op_probs[0]) {
      op = OffspringOp::clone;
    } else if (u < cfg.op_probs[0] + cfg.op_probs[1]) {
      op = OffspringOp::mutate;
    } else if (cfg.op_probs[2] == 0.0) {
      // Rounding left u past both cumulative bounds; fall back to the last
      // operator with nonzero probability.
      op = cfg.op_probs[1] > 0.0 ? OffspringOp::mutate : OffspringOp::clone;
    }
    const auto& parent = population[rng.below(size)];
    switch (op) {
      case OffspringOp::clone:
        offspring.push_back(parent);
        break;
      case OffspringOp::mutate:
        offspring.push_back(mutate(parent, cfg.mutation_rate, rng));
        break;
      case OffspringOp::crossover: {
        const auto first = static_cast<std::size_t>(&parent - population.data());
        auto second = static_cast<std::size_t>(rng.below(size - 1));
        if (second >= first) ++second;
        offspring.push_back(crossover(parent, population[second], rng));
        break;
      }
    }
  }
  return offspring;
}

std::vector<std::size_t> tournament_select(std::span<const double> fitness, int count,
                                           int tournament_size, Direction direction, Rng& rng) {
  if (fitness.empty()) throw InvalidArgument("tournament needs at least one candidate");
  std::vector<std::size_t> winners;
  winners.reserve(static_cast<std::size_t>(count));
  for (int round = 0; round < count; ++round) {
    std::size_t winner = rng.below(fitness.size());
    for (int k = 1; k < tournament_size; ++k) {
      const std::size_t challenger = rng.below(fitness.size());
      if (better(fitness[challenger], fitness[winner], direction)) winner = challenger;
    }
    winners.push_back(winner);
  }
  return winners;
}

bool extension_rule(std::span<const double> best, Direction direction) {
  if (best.size() < 2) return false;
  const auto w = static_cast<double>(best.size());
  const double mean_x = (w - 1.0) / 2.0;
  double mean_y = 0.0;
  double scale = 0.0;
  for (double y : best) {
    mean_y += y;
    scale = std::max(scale, std::abs(y));
  }
  mean_y /= w;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (best[i] - mean_y);
    sxx += dx * dx;
  }
  double slope = sxy / sxx;
  if (direction == Direction::minimize) slope = -slope;
  return slope > 1e-3 * scale;
}

EvolutionResult run_evolution(const EvolutionConfig& cfg, const FitnessMode& mode,
                              std::optional<std::vector<Graph>> initial) {
  cfg.validate();
  const auto binding = bind(mode, cfg.direction);
  const Direction direction = binding.direction;
  Evaluator evaluator(binding.fitness, cfg.workers);

  std::vector<Graph> population;
  if (initial) {
    population = std::move(*initial);
    if (population.size() != static_cast<std::size_t>(cfg.pop_size)) {
      throw InvalidArgument("initial population size does not match the configuration");
    }
    for (const auto& g : population) {
      if (g.n() != cfg.n) throw InvalidArgument("initial population has the wrong node count");
    }
  } else {
    const double p = cfg.initial_p ? *cfg.initial_p
                                   : Rng(derive_seed(cfg.seed, kInitialP)).uniform01();
    for (int i = 0; i < cfg.pop_size; ++i) {
      population.push_back(generate(
          {ErdosRenyi{p}, cfg.n, derive_seed(cfg.seed, kInitialGraph, static_cast<std::uint64_t>(i))}));
    }
  }

  EvolutionResult result{HallOfFame(static_cast<std::size_t>(cfg.hof_size), direction), {},
                         direction, false, 0};
  std::vector<double> best_per_generation;
  auto absorb = [&](int generation, const std::vector<Graph>& graphs,
                    const std::vector<Evaluation>& evals) {
    for (std::size_t k = 0; k < graphs.size(); ++k) {
      result.hall_of_fame.insert({graphs[k], evals[k], generation});
    }
  };

  auto evals = evaluator.evaluate(population);
  absorb(0, population, evals);
  std::vector<double> fitness(evals.size());
  std::transform(evals.begin(), evals.end(), fitness.begin(),
                 [](const Evaluation& e) { return e.fitness; });
  result.stats.push_back(summarize(0, population, fitness));
  result.stats.back().hof_best = result.hall_of_fame.best().evaluation.fitness;
  best_per_generation.push_back(direction == Direction::maximize ? result.stats.back().max
                                                                 : result.stats.back().min);

  int last_generation = cfg.generations;
  for (int gen = 1; gen <= last_generation; ++gen) {
    auto offspring = make_offspring(
        population, cfg, derive_seed(cfg.seed, kOffspring, static_cast<std::uint64_t>(gen)));
    evals = evaluator.evaluate(offspring);
    absorb(gen, offspring, evals);
    fitness.resize(evals.size());
    std::transform(evals.begin(), evals.end(), fitness.begin(),
                   [](const Evaluation& e) { return e.fitness; });

    Rng select_rng(derive_seed(cfg.seed, kSelection, static_cast<std::uint64_t>(gen)));
    const auto winners =
        tournament_select(fitness, cfg.pop_size, cfg.tournament_size, direction, select_rng);
    std::vector<Graph> next;
    std::vector<double> next_fitness;
    next.reserve(winners.size());
    for (auto w : winners) {
      next.push_back(offspring[w]);
      next_fitness.push_back(fitness[w]);
    }
    population = std::move(next);
    result.stats.push_back(summarize(gen, population, next_fitness));
    result.stats.back().hof_best = result.hall_of_fame.best().evaluation.fitness;
    best_per_generation.push_back(direction == Direction::maximize ? result.stats.back().max
                                                                   : result.stats.back().min);

    if (gen == last_generation && cfg.allow_extension && !result.extended &&
        cfg.extension_generations > 0 &&
        best_per_generation.size() >= static_cast<std::size_t>(cfg.extension_window)) {
      const std::span<const double> window(
          best_per_generation.end() - cfg.extension_window, best_per_generation.end());
      if (extension_rule(window, direction)) {
        result.extended = true;
        last_generation += cfg.extension_generations;
      }
    }
  }
  result.evaluations = evaluator.evaluations();
  return result;
}

}  // namespace hcp
