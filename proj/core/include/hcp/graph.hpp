#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hcp {

using Node = int;
using Edge = std::pair<Node, Node>;

inline constexpr int kMinNodes = 3;
inline constexpr int kMaxNodes = 4096;

// Number of node pairs, n(n-1)/2.
constexpr std::size_t pair_count(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

// Row-major position of pair {i, j}, i < j, in the unrolled upper triangle:
// (0,1), (0,2), ..., (0,n-1), (1,2), ...
std::size_t edge_index(Node i, Node j, int n);

// Inverse of edge_index.
Edge edge_at(std::size_t index, int n);

// Undirected simple graph on a fixed node count, stored as the upper-triangular
// adjacency bitvector. Values are cheap to copy and compare; bit access is O(1).
class Graph {
 public:
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const Edge> edges);
  static Graph complete(int n);

  int n() const { return n_; }
  std::size_t bit_count() const { return pair_count(n_); }

  bool bit(std::size_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1U;
  }
  void set_bit(std::size_t index, bool value);
  void flip_bit(std::size_t index) { words_[index >> 6] ^= std::uint64_t{1} << (index & 63); }

  bool has_edge(Node i, Node j) const;
  void set_edge(Node i, Node j, bool present = true);

  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  // Dense row-major n*n 0/1 matrix.
  std::vector<std::uint8_t> adjacency_matrix() const;

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

// Adjacency matrix <-> Graph. The matrix is row-major n*n, symmetric with a
// zero diagonal; anything else is rejected.
Graph encode(std::span<const std::uint8_t> adjacency, int n);
std::vector<std::uint8_t> decode(const Graph& g);

// Bits packed little-endian within bytes in edge_index order, lowercase hex.
std::string to_hex(const Graph& g);
Graph from_hex(int n, std::string_view hex);

// Stable 64-bit FNV-1a over the node count and the packed bitvector.
std::uint64_t content_hash(const Graph& g);

// Edge-list text: "n m" header, then m lines "i j" with i < j ascending by
// edge_index. Blank lines and '#' comments are skipped on read.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

std::vector<int> degree_sequence(const Graph& g);
int connected_components(const Graph& g);

// Number of consecutive tour pairs (including the closing pair) that are not
// edges of g. Zero iff the tour is a Hamiltonian cycle of g.
int missing_tour_edges(const Graph& g, std::span<const Node> tour);

// Throws InvalidArgument unless tour is a permutation of 0..n-1.
void check_permutation(std::span<const Node> tour, int n);

}  // namespace hcp

template <>
struct std::hash<hcp::Graph> {
  std::size_t operator()(const hcp::Graph& g) const noexcept {
    return static_cast<std::size_t>(hcp::content_hash(g));
  }
};
