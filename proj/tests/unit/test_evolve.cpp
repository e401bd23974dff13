#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hcp/error.hpp"
#include "hcp/evolve.hpp"
#include "hcp/features.hpp"
#include "samples.hpp"

using namespace hcp;

namespace {

CustomMode edge_count_mode() {
  return CustomMode{[](const Graph& g) { return Evaluation{static_cast<double>(g.edge_count()), {}, {}}; }};
}

std::size_t hamming(const Graph& a, const Graph& b) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.bit_count(); ++k) d += a.bit(k) != b.bit(k);
  return d;
}

std::vector<Graph> random_population(int size, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph> pop;
  for (int i = 0; i < size; ++i) pop.push_back(test::random_graph(n, 0.3, rng));
  return pop;
}

ProjectionModel small_model() {
  std::vector<FeatureVector> rows;
  for (const auto& g : test::sample_graphs(80, 12, 12, 4)) rows.push_back(feature_vector(g));
  return fit_projection(rows);
}

}  // namespace

TEST_CASE("mutation respects its budget") {
  Rng rng(1);
  CHECK(mutation_budget(Graph(10), 0.03) == 1);
  for (int rep = 0; rep < 200; ++rep) {
    Graph g(30);
    int placed = 0;
    while (placed < 100) {
      const auto k = static_cast<std::size_t>(rng.below(g.bit_count()));
      if (!g.bit(k)) {
        g.set_bit(k, true);
        ++placed;
      }
    }
    CHECK(mutation_budget(g, 0.03) == 3);
    const auto child = mutate(g, 0.03, rng);
    CHECK(child.edge_count() >= 97);
    CHECK(child.edge_count() <= 103);
    CHECK(hamming(child, g) <= 6);
  }
}

TEST_CASE("forced mutations on saturated graphs are no-ops") {
  Rng rng(2);
  const Graph full = Graph::complete(8);
  const Graph empty(8);
  for (int rep = 0; rep < 20; ++rep) {
    CHECK(mutate(full, 0.5, rng, MutationOp::add) == full);
    CHECK(mutate(empty, 0.5, rng, MutationOp::remove) == empty);
    const auto replaced = mutate(test::cycle(8), 0.03, rng, MutationOp::replace);
    CHECK(replaced.edge_count() == 8);
    CHECK(hamming(replaced, test::cycle(8)) == 2);
  }
}

TEST_CASE("crossover") {
  Rng rng(3);
  const Graph a = test::petersen();
  const Graph empty(10);
  const Graph full = Graph::complete(10);
  for (int rep = 0; rep < 50; ++rep) CHECK(crossover(a, a, rng) == a);
  CHECK(crossover_at(a, full, 7, 7, true) == a);
  CHECK(crossover_at(a, full, 7, 7, false) == full);
  CHECK(crossover_at(empty, full, 0, empty.bit_count(), true) == full);
  CHECK(crossover_at(empty, full, 0, empty.bit_count(), false) == empty);
  const auto mid = crossover_at(empty, full, 5, 9, true);
  CHECK(mid.edge_count() == 4);
  CHECK(mid.bit(5));
  CHECK_FALSE(mid.bit(9));
  CHECK_THROWS_AS(crossover(a, Graph(9), rng), InvalidArgument);
  CHECK_THROWS_AS(crossover_at(a, full, 9, 5, true), InvalidArgument);
}

TEST_CASE("offspring operators") {
  const auto pop = random_population(20, 12, 4);
  EvolutionConfig cfg;
  cfg.n = 12;

  cfg.op_probs = {1.0, 0.0, 0.0};
  for (const auto& child : make_offspring(pop, cfg, 9)) {
    CHECK(std::find(pop.begin(), pop.end(), child) != pop.end());
  }

  cfg.op_probs = {0.0, 1.0, 0.0};
  cfg.mutation_rate = 1e-6;
  const auto mutated = make_offspring(pop, cfg, 9);
  CHECK(mutated.size() == 30);
  for (const auto& child : mutated) {
    std::size_t nearest = child.bit_count();
    for (const auto& parent : pop) nearest = std::min(nearest, hamming(child, parent));
    CHECK(nearest <= 2);
  }

  cfg.op_probs = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  cfg.mutation_rate = 0.03;
  CHECK(make_offspring(pop, cfg, 77) == make_offspring(pop, cfg, 77));
}

TEST_CASE("tournament selection") {
  Rng rng(5);
  const std::vector<double> flat(30, 1.0);
  const auto picked = tournament_select(flat, 20, 2, Direction::maximize, rng);
  CHECK(picked.size() == 20);
  for (auto i : picked) CHECK(i < 30);

  std::vector<double> fitness(30, 0.0);
  fitness[17] = 1.0;
  const int rounds = 10000;
  int wins = 0;
  for (int r = 0; r < rounds; ++r) {
    if (tournament_select(fitness, 1, 2, Direction::maximize, rng).front() == 17) ++wins;
  }
  const double p = 1.0 - (29.0 / 30.0) * (29.0 / 30.0);
  const double sigma = std::sqrt(p * (1 - p) / rounds);
  CHECK(std::abs(wins / double(rounds) - p) < 3 * sigma);

  // Minimizing flips the winner.
  std::vector<double> two{2.0, 1.0};
  int low = 0;
  for (int r = 0; r < 1000; ++r) {
    if (tournament_select(two, 1, 2, Direction::minimize, rng).front() == 1) ++low;
  }
  CHECK(low > 650);

  Rng x(8), y(8);
  CHECK(tournament_select(fitness, 20, 2, Direction::maximize, x) ==
        tournament_select(fitness, 20, 2, Direction::maximize, y));
}

TEST_CASE("extension rule") {
  const std::vector<double> flat(25, 3.0);
  CHECK_FALSE(extension_rule(flat, Direction::maximize));
  std::vector<double> rising(25);
  for (std::size_t i = 0; i < rising.size(); ++i) rising[i] = 1.0 + static_cast<double>(i);
  CHECK(extension_rule(rising, Direction::maximize));
  CHECK_FALSE(extension_rule(rising, Direction::minimize));
  std::vector<double> falling(rising.rbegin(), rising.rend());
  CHECK(extension_rule(falling, Direction::minimize));
}

TEST_CASE("hall of fame keeps the best distinct graphs") {
  HallOfFame hof(3, Direction::maximize);
  const Graph a = test::cycle(5);
  const Graph b = test::path(5);
  const Graph c = Graph::complete(5);
  const Graph d(5);
  CHECK(hof.insert({a, {1.0, {}, {}}, 0}));
  CHECK_FALSE(hof.insert({a, {5.0, {}, {}}, 1}));
  CHECK(hof.insert({b, {3.0, {}, {}}, 1}));
  CHECK(hof.insert({c, {1.0, {}, {}}, 2}));
  CHECK(hof.size() == 3);
  CHECK(hof.best().graph == b);
  CHECK(hof.entries()[1].graph == a);  // equal fitness keeps insertion order
  CHECK_FALSE(hof.insert({d, {0.5, {}, {}}, 3}));
  CHECK(hof.insert({d, {4.0, {}, {}}, 3}));
  CHECK(hof.size() == 3);
  CHECK(hof.best().graph == d);
  CHECK(hof.entries().back().graph == a);
}

TEST_CASE("surrogate evolution improves and never worsens the hall of fame") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    EvolutionConfig cfg;
    cfg.n = 20;
    cfg.generations = 40;
    cfg.allow_extension = false;
    cfg.seed = seed;
    const auto result = run_evolution(cfg, edge_count_mode());
    CHECK(result.stats.size() == 41);
    for (std::size_t g = 1; g < result.stats.size(); ++g) {
      CHECK(result.stats[g].hof_best >= result.stats[g - 1].hof_best);
      CHECK(result.stats[g].min <= result.stats[g].mean);
      CHECK(result.stats[g].mean <= result.stats[g].max);
    }
    CHECK(result.hall_of_fame.best().evaluation.fitness > result.stats.front().max);
    CHECK(result.stats.back().hof_best == result.hall_of_fame.best().evaluation.fitness);
  }
}

TEST_CASE("replay is independent of the worker count") {
  EvolutionConfig cfg;
  cfg.n = 14;
  cfg.generations = 15;
  cfg.seed = 42;
  std::vector<std::string> dumps;
  for (int workers : {1, 2, 8}) {
    cfg.workers = workers;
    const auto result = run_evolution(cfg, edge_count_mode());
    std::ostringstream out;
    write_stats_csv(out, result.stats);
    for (const auto& e : result.hall_of_fame.entries()) out << to_hex(e.graph) << ' ' << e.generation << '\n';
    dumps.push_back(out.str());
  }
  CHECK(dumps[0] == dumps[1]);
  CHECK(dumps[0] == dumps[2]);
}

TEST_CASE("zero generations keep only the starting population") {
  EvolutionConfig cfg;
  cfg.n = 10;
  cfg.generations = 0;
  const auto result = run_evolution(cfg, edge_count_mode());
  CHECK(result.stats.size() == 1);
  CHECK(result.hall_of_fame.size() <= 20);
  for (const auto& e : result.hall_of_fame.entries()) CHECK(e.generation == 0);
}

TEST_CASE("explicit initial population is validated") {
  EvolutionConfig cfg;
  cfg.n = 10;
  CHECK_THROWS_AS(run_evolution(cfg, edge_count_mode(), random_population(5, 10, 1)), InvalidArgument);
  CHECK_THROWS_AS(run_evolution(cfg, edge_count_mode(), random_population(20, 11, 1)), InvalidArgument);
  cfg.op_probs = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(run_evolution(cfg, edge_count_mode()), InvalidArgument);
}

TEST_CASE("novelty and target fitness") {
  const auto model = small_model();
  const Graph g = test::sample_graphs(1, 12, 12, 99).front();
  const Point2 p = project(model, feature_vector(g));
  const std::vector<Point2> has_g{{p.x + 10, p.y}, p};
  CHECK(novelty_fitness(g, has_g, model) == 0.0);
  const std::vector<Point2> offset{{p.x - 3, p.y - 4}};
  CHECK(novelty_fitness(g, offset, model) == doctest::Approx(5.0));
  CHECK(target_fitness(g, p, model) == 0.0);
  CHECK_THROWS_AS(novelty_fitness(g, {}, model), InvalidArgument);
}

TEST_CASE("target mode approaches the target") {
  const auto model = small_model();
  const auto targets = test::sample_graphs(10, 12, 12, 123);
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EvolutionConfig cfg;
    cfg.n = 12;
    cfg.generations = 30;
    cfg.allow_extension = false;
    cfg.seed = seed;
    const Point2 target = project(model, feature_vector(targets[seed]));
    const auto result = run_evolution(cfg, TargetMode{target, model});
    CHECK(result.direction == Direction::minimize);
    if (result.hall_of_fame.best().evaluation.fitness < result.stats.front().min) ++improved;
    for (const auto& e : result.hall_of_fame.entries()) CHECK(e.evaluation.point.has_value());
  }
  CHECK(improved >= 9);
}

TEST_CASE("direction parsing and mode names") {
  CHECK(parse_direction("maximize") == Direction::maximize);
  CHECK(parse_direction("minimize") == Direction::minimize);
  CHECK_THROWS_AS(parse_direction("sideways"), InvalidArgument);
  CHECK(mode_name(edge_count_mode()) == "custom");
  CHECK(mode_name(RuntimeDiffMode{}) == "hardness");
}
