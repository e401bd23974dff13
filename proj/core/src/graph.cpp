#include "hcp/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hcp/error.hpp"

namespace hcp {

namespace {

void check_node_count(int n) {
  if (n < kMinNodes || n > kMaxNodes) {
    throw InvalidArgument("node count " + std::to_string(n) + " outside [" +
                          std::to_string(kMinNodes) + ", " +
                          std::to_string(kMaxNodes) + "]");
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::size_t edge_index(Node i, Node j, int n) {
  if (i < 0 || j >= n || i >= j) {
    throw InvalidArgument("edge_index requires 0 <= i < j < n, got (" +
                          std::to_string(i) + ", " + std::to_string(j) +
                          ") with n = " + std::to_string(n));
  }
  const auto si = static_cast<std::size_t>(i);
  const auto sn = static_cast<std::size_t>(n);
  return si * (2 * sn - si - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

Edge edge_at(std::size_t index, int n) {
  if (index >= pair_count(n)) throw InvalidArgument("edge position out of range");
  Node i = 0;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (index >= row) {
    index -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<Node>(index)};
}

Graph::Graph(int n) : n_(n) {
  check_node_count(n);
  words_.assign((pair_count(n) + 63) / 64, 0);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [a, b] : edges) {
    if (a == b) throw InvalidArgument("self-loop on node " + std::to_string(a));
    g.set_edge(a, b);
  }
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (std::size_t k = 0; k < g.bit_count(); ++k) g.set_bit(k, true);
  return g;
}

void Graph::set_bit(std::size_t index, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (index & 63);
  if (value) {
    words_[index >> 6] |= mask;
  } else {
    words_[index >> 6] &= ~mask;
  }
}

bool Graph::has_edge(Node i, Node j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return bit(edge_index(i, j, n_));
}

void Graph::set_edge(Node i, Node j, bool present) {
  if (i > j) std::swap(i, j);
  set_bit(edge_index(i, j, n_), present);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  std::size_t k = 0;
  for (Node i = 0; i < n_; ++i) {
    for (Node j = i + 1; j < n_; ++j, ++k) {
      if (bit(k)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::uint8_t> Graph::adjacency_matrix() const {
  const auto sn = static_cast<std::size_t>(n_);
  std::vector<std::uint8_t> m(sn * sn, 0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < sn; ++i) {
    for (std::size_t j = i + 1; j < sn; ++j, ++k) {
      if (bit(k)) m[i * sn + j] = m[j * sn + i] = 1;
    }
  }
  return m;
}

Graph encode(std::span<const std::uint8_t> adjacency, int n) {
  check_node_count(n);
  const auto sn = static_cast<std::size_t>(n);
  if (adjacency.size() != sn * sn) {
    throw InvalidArgument("adjacency matrix must have n*n entries");
  }
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < sn; ++i) {
    if (adjacency[i * sn + i] != 0) {
      throw InvalidArgument("nonzero diagonal at node " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < sn; ++j, ++k) {
      const auto upper = adjacency[i * sn + j];
      const auto lower = adjacency[j * sn + i];
      if (upper > 1 || lower > 1 || upper != lower) {
        throw InvalidArgument("adjacency matrix is not a symmetric 0/1 matrix at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (upper) g.set_bit(k, true);
    }
  }
  return g;
}

std::vector<std::uint8_t> decode(const Graph& g) { return g.adjacency_matrix(); }

std::string to_hex(const Graph& g) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t bytes = (g.bit_count() + 7) / 8;
  std::string out;
  out.reserve(bytes * 2);
  const auto words = g.words();
  for (std::size_t b = 0; b < bytes; ++b) {
    const auto byte = static_cast<unsigned>((words[b / 8] >> (8 * (b % 8))) & 0xffU);
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xfU]);
  }
  return out;
}

Graph from_hex(int n, std::string_view hex) {
  Graph g(n);
  const std::size_t bytes = (g.bit_count() + 7) / 8;
  if (hex.size() != bytes * 2) {
    throw FormatError("edge_hex has " + std::to_string(hex.size()) +
                      " digits, expected " + std::to_string(bytes * 2) +
                      " for n = " + std::to_string(n));
  }
  for (std::size_t b = 0; b < bytes; ++b) {
    const int hi = hex_value(hex[2 * b]);
    const int lo = hex_value(hex[2 * b + 1]);
    if (hi < 0 || lo < 0) throw FormatError("edge_hex contains a non-hex digit");
    const auto byte = static_cast<unsigned>(hi * 16 + lo);
    for (unsigned bit = 0; bit < 8; ++bit) {
      if (!((byte >> bit) & 1U)) continue;
      const std::size_t index = 8 * b + bit;
      if (index >= g.bit_count()) throw FormatError("edge_hex sets padding bits");
      g.set_bit(index, true);
    }
  }
  return g;
}

std::uint64_t content_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  const auto n = static_cast<std::uint32_t>(g.n());
  for (int s = 0; s < 32; s += 8) feed(static_cast<std::uint8_t>(n >> s));
  const std::size_t bytes = (g.bit_count() + 7) / 8;
  const auto words = g.words();
  for (std::size_t b = 0; b < bytes; ++b) {
    feed(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
  }
  return h;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (auto [i, j] : edges) out << i << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> FormatError {
    return FormatError("edge list line " + std::to_string(line_no) + ": " + what);
  };

  if (!next_content_line()) throw FormatError("edge list is empty");
  long long n = 0;
  long long m = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || m < 0) throw fail("expected header \"n m\"");
  }
  if (n < kMinNodes || n > kMaxNodes) throw fail("node count out of range");
  Graph g(static_cast<int>(n));
  for (long long e = 0; e < m; ++e) {
    if (!next_content_line()) throw fail("expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long i = 0;
    long long j = 0;
    if (!(row >> i >> j)) throw fail("expected \"i j\"");
    if (i < 0 || j >= n || i >= j) throw fail("edge must satisfy 0 <= i < j < n");
    g.set_edge(static_cast<Node>(i), static_cast<Node>(j));
  }
  if (g.edge_count() != static_cast<std::size_t>(m)) throw fail("duplicate edges");
  return g;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
  std::size_t k = 0;
  for (Node i = 0; i < g.n(); ++i) {
    for (Node j = i + 1; j < g.n(); ++j, ++k) {
      if (g.bit(k)) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
      }
    }
  }
  return deg;
}

int connected_components(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = g.n();
  for (auto [i, j] : g.edges()) {
    const auto a = find(static_cast<std::size_t>(i));
    const auto b = find(static_cast<std::size_t>(j));
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

void check_permutation(std::span<const Node> tour, int n) {
  if (tour.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("tour has " + std::to_string(tour.size()) +
                          " nodes, expected " + std::to_string(n));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Node v : tour) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("tour is not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

int missing_tour_edges(const Graph& g, std::span<const Node> tour) {
  check_permutation(tour, g.n());
  int missing = 0;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const Node a = tour[k];
    const Node b = tour[(k + 1) % tour.size()];
    if (!g.has_edge(a, b)) ++missing;
  }
  return missing;
}

}  // namespace hcp
