#include "hcp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "hcp/error.hpp"
#include "hcp/rng.hpp"

namespace hcp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
  Graph g(n);
  Rng rng(seed);
  for (std::size_t k = 0; k < g.bit_count(); ++k) {
    if (rng.bernoulli(p)) g.set_bit(k, true);
  }
  return g;
}

Graph circle(int n) {
  Graph g(n);
  for (Node v = 0; v < n; ++v) g.set_edge(v, (v + 1) % n);
  return g;
}

Graph grid(int n, Grid shape) {
  if (shape.rows == 0 && shape.cols == 0) {
    std::tie(shape.rows, shape.cols) = default_grid_shape(n);
  }
  if (shape.rows < 1 || shape.cols < 1 || shape.rows * shape.cols != n) {
    throw InvalidArgument("grid " + std::to_string(shape.rows) + "x" +
                          std::to_string(shape.cols) + " does not have " +
                          std::to_string(n) + " nodes");
  }
  Graph g(n);
  for (int r = 0; r < shape.rows; ++r) {
    for (int c = 0; c < shape.cols; ++c) {
      const Node v = r * shape.cols + c;
      if (c + 1 < shape.cols) g.set_edge(v, v + 1);
      if (r + 1 < shape.rows) g.set_edge(v, v + shape.cols);
    }
  }
  return g;
}

Graph star(int n) {
  Graph g(n);
  for (Node v = 1; v < n; ++v) g.set_edge(0, v);
  return g;
}

Graph preferential_attachment(int n, int m, std::uint64_t seed) {
  if (m < 1) throw InvalidArgument("preferential attachment needs m >= 1");
  if (m + 1 > n) throw InvalidArgument("preferential attachment needs m + 1 <= n");
  Graph g(n);
  // Each node appears once per incident edge, so a uniform draw from this list
  // is a degree-proportional draw.
  std::vector<Node> endpoints;
  for (Node i = 0; i <= m; ++i) {
    for (Node j = i + 1; j <= m; ++j) {
      g.set_edge(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  Rng rng(seed);
  std::vector<Node> chosen;
  for (Node v = m + 1; v < n; ++v) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < m) {
      const Node t = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (Node t : chosen) {
      g.set_edge(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return g;
}

Graph structured_tree(int n, int branching) {
  if (branching < 1) throw InvalidArgument("tree branching must be >= 1");
  Graph g(n);
  for (Node v = 1; v < n; ++v) g.set_edge((v - 1) / branching, v);
  return g;
}

std::string format_double(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

}  // namespace

std::pair<int, int> default_grid_shape(int n) {
  int rows = 1;
  for (int r = 1; r * r <= n; ++r) {
    if (n % r == 0) rows = r;
  }
  return {rows, n / rows};
}

std::string kind_name(const GeneratorKind& kind) {
  return std::visit(Overloaded{
                        [](const ErdosRenyi&) { return std::string("erdos_renyi"); },
                        [](const Circle&) { return std::string("circle"); },
                        [](const Grid&) { return std::string("grid"); },
                        [](const Star&) { return std::string("star"); },
                        [](const PreferentialAttachment&) {
                          return std::string("preferential_attachment");
                        },
                        [](const StructuredTree&) { return std::string("structured_tree"); },
                    },
                    kind);
}

std::string describe(const GeneratorKind& kind) {
  return std::visit(
      Overloaded{
          [](const ErdosRenyi& k) { return "erdos_renyi(p=" + format_double(k.p) + ")"; },
          [](const Circle&) { return std::string("circle"); },
          [](const Grid& k) {
            return "grid(" + std::to_string(k.rows) + "x" + std::to_string(k.cols) + ")";
          },
          [](const Star&) { return std::string("star"); },
          [](const PreferentialAttachment& k) {
            return "preferential_attachment(m=" + std::to_string(k.m) + ")";
          },
          [](const StructuredTree& k) {
            return "structured_tree(b=" + std::to_string(k.branching) + ")";
          },
      },
      kind);
}

GeneratorKind parse_kind(const std::string& name) {
  if (name == "erdos_renyi" || name == "er") return ErdosRenyi{};
  if (name == "circle") return Circle{};
  if (name == "grid") return Grid{};
  if (name == "star") return Star{};
  if (name == "preferential_attachment" || name == "pa") return PreferentialAttachment{};
  if (name == "structured_tree" || name == "tree") return StructuredTree{};
  throw InvalidArgument("unknown generator kind '" + name + "'");
}

Graph generate(const GeneratorSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const ErdosRenyi& k) { return erdos_renyi(spec.n, k.p, spec.seed); },
          [&](const Circle&) { return circle(spec.n); },
          [&](const Grid& k) { return grid(spec.n, k); },
          [&](const Star&) { return star(spec.n); },
          [&](const PreferentialAttachment& k) {
            return preferential_attachment(spec.n, k.m, spec.seed);
          },
          [&](const StructuredTree& k) { return structured_tree(spec.n, k.branching); },
      },
      spec.kind);
}

std::vector<GeneratorSpec> standard_sweep(int n, int er_count, std::uint64_t seed) {
  std::vector<GeneratorSpec> specs;
  std::uint64_t stream = 0;
  auto add = [&](GeneratorKind kind) {
    specs.push_back({kind, n, derive_seed(seed, ++stream)});
  };
  for (int k = 0; k < er_count; ++k) {
    add(ErdosRenyi{(k + 0.5) / er_count});
  }
  add(Circle{});
  add(Grid{});
  add(Star{});
  for (int m = 1; m <= 4 && m + 1 <= n; ++m) add(PreferentialAttachment{m});
  for (int b = 2; b <= 4; ++b) add(StructuredTree{b});
  return specs;
}

}  // namespace hcp
