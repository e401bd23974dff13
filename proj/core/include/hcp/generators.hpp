#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hcp/graph.hpp"

namespace hcp {

struct ErdosRenyi {
  double p = 0.5;
};
struct Circle {};
// rows * cols must equal n. Zero for both picks the most square factorization
// (5 x 10 at n = 50).
struct Grid {
  int rows = 0;
  int cols = 0;
};
struct Star {};
// Barabasi-Albert: seed clique on m + 1 nodes, each later node attaches to m
// distinct earlier nodes with probability proportional to degree.
struct PreferentialAttachment {
  int m = 2;
};
// Complete branching tree with breadth-first numbering: parent(v) = (v - 1) / b.
struct StructuredTree {
  int branching = 2;
};

using GeneratorKind =
    std::variant<ErdosRenyi, Circle, Grid, Star, PreferentialAttachment, StructuredTree>;

struct GeneratorSpec {
  GeneratorKind kind;
  int n = 16;
  std::uint64_t seed = 0;
};

// Stable lowercase name of the kind ("erdos_renyi", "circle", ...).
std::string kind_name(const GeneratorKind& kind);

// Human-readable label including parameters, e.g. "erdos_renyi(p=0.3)".
std::string describe(const GeneratorKind& kind);

// Parses "erdos_renyi", "circle", "grid", "star", "preferential_attachment",
// "structured_tree" with default parameters.
GeneratorKind parse_kind(const std::string& name);

// Pure in (spec); ER draws one Bernoulli(p) per pair in edge_index order.
Graph generate(const GeneratorSpec& spec);

// The default grid factorization used when Grid{0, 0} is given.
std::pair<int, int> default_grid_shape(int n);

// Parameter sweep over all six kinds: count ER graphs with p evenly spread
// over (0, 1), plus circle, grid, star, preferential attachment with
// m = 1..4 and trees with branching 2..4.
std::vector<GeneratorSpec> standard_sweep(int n, int er_count, std::uint64_t seed);

}  // namespace hcp
