#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hcp/error.hpp"
#include "hcp/graph.hpp"
#include "hcp/rng.hpp"
#include "samples.hpp"

using namespace hcp;

using test::random_graph;

TEST_CASE("edge_index examples") {
  CHECK(edge_index(0, 1, 5) == 0);
  CHECK(edge_index(0, 4, 5) == 3);
  CHECK(edge_index(3, 4, 5) == 9);
  CHECK_THROWS_AS(edge_index(2, 2, 5), InvalidArgument);
  CHECK_THROWS_AS(edge_index(3, 1, 5), InvalidArgument);
  CHECK_THROWS_AS(edge_index(0, 5, 5), InvalidArgument);
  CHECK_THROWS_AS(edge_index(-1, 2, 5), InvalidArgument);
}

TEST_CASE("edge_index is a bijection onto [0, n(n-1)/2)") {
  for (int n = 3; n <= 64; ++n) {
    std::vector<int> hits(pair_count(n), 0);
    for (Node i = 0; i < n; ++i) {
      for (Node j = i + 1; j < n; ++j) {
        const auto k = edge_index(i, j, n);
        REQUIRE(k < hits.size());
        ++hits[k];
        REQUIRE(edge_at(k, n) == Edge{i, j});
      }
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("encoding example bitvector") {
  const Graph g = test::encoding_example();
  std::string bits;
  for (std::size_t k = 0; k < g.bit_count(); ++k) bits.push_back(g.bit(k) ? '1' : '0');
  CHECK(bits == "0111100100");

  const Graph empty(4);
  CHECK(empty.bit_count() == 6);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("encode rejects bad matrices") {
  std::vector<std::uint8_t> m(9, 0);
  m[1] = 1;  // (0,1) without (1,0)
  CHECK_THROWS_AS(encode(m, 3), InvalidArgument);
  m[3] = 1;
  CHECK_NOTHROW(encode(m, 3));
  m[4] = 1;  // diagonal
  CHECK_THROWS_AS(encode(m, 3), InvalidArgument);
  CHECK_THROWS_AS(Graph(2), InvalidArgument);
  CHECK_THROWS_AS(Graph(kMaxNodes + 1), InvalidArgument);
}

TEST_CASE("encode/decode round trip") {
  Rng rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    const Graph g = random_graph(10, 0.4, rng);
    CHECK(encode(decode(g), 10) == g);
  }
  for (int n = 3; n <= 64; ++n) {
    const Graph g = random_graph(n, rng.uniform01(), rng);
    const auto m = decode(g);
    CHECK(encode(m, n) == g);
    CHECK(decode(encode(m, n)) == m);
  }
}

TEST_CASE("hex form round trips and rejects garbage") {
  Rng rng(11);
  for (int n = 3; n <= 40; ++n) {
    const Graph g = random_graph(n, 0.5, rng);
    const auto hex = to_hex(g);
    CHECK(hex.size() == 2 * ((g.bit_count() + 7) / 8));
    CHECK(from_hex(n, hex) == g);
  }
  // Encoding example: bits 0..7 = 0,1,1,1,1,0,0,1 -> 0x9e; bits 8..9 = 0,0.
  CHECK(to_hex(test::encoding_example()) == "9e00");
  CHECK_THROWS_AS(from_hex(5, "9e0"), FormatError);
  CHECK_THROWS_AS(from_hex(5, "9g00"), FormatError);
  CHECK_THROWS_AS(from_hex(5, "9e04"), FormatError);  // padding bit
}

TEST_CASE("content hash separates node counts and edge sets") {
  CHECK(content_hash(Graph(8)) != content_hash(Graph(9)));
  Graph a(8);
  Graph b(8);
  b.set_edge(2, 5);
  CHECK(content_hash(a) != content_hash(b));
  CHECK(content_hash(b) == content_hash(Graph::from_edges(8, b.edges())));
}

TEST_CASE("edge list round trip and diagnostics") {
  const Graph g = test::petersen();
  std::stringstream ss;
  write_edge_list(ss, g);
  CHECK(read_edge_list(ss) == g);

  std::istringstream commented("# header\n\n4 2\n0 1\n# mid\n2 3\n");
  CHECK(read_edge_list(commented).edge_count() == 2);

  std::istringstream bad("4 2\n0 1\n3 2\n");
  try {
    read_edge_list(bad);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream dup("4 2\n0 1\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(dup), FormatError);
  std::istringstream short_list("4 3\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(short_list), FormatError);
}

TEST_CASE("degree sequence, components, tour witness") {
  const Graph c5 = test::cycle(5);
  CHECK(degree_sequence(c5) == std::vector<int>(5, 2));
  CHECK(connected_components(c5) == 1);
  CHECK(connected_components(Graph(5)) == 5);

  const std::vector<Node> tour{0, 1, 2, 3, 4};
  CHECK(missing_tour_edges(c5, tour) == 0);
  CHECK(missing_tour_edges(Graph(5), tour) == 5);

  Graph completed = test::example_graph();
  completed.set_edge(0, 4);
  CHECK(missing_tour_edges(completed, tour) == 0);

  const std::vector<Node> repeated{0, 1, 1, 3, 4};
  CHECK_THROWS_AS(missing_tour_edges(c5, repeated), InvalidArgument);
  const std::vector<Node> too_short{0, 1, 2};
  CHECK_THROWS_AS(missing_tour_edges(c5, too_short), InvalidArgument);
}

TEST_CASE("adjacency matrix is symmetric") {
  Rng rng(3);
  const Graph g = random_graph(12, 0.3, rng);
  const auto m = g.adjacency_matrix();
  for (int i = 0; i < 12; ++i) {
    CHECK(m[static_cast<std::size_t>(i * 12 + i)] == 0);
    for (int j = 0; j < 12; ++j) {
      CHECK(m[static_cast<std::size_t>(i * 12 + j)] == m[static_cast<std::size_t>(j * 12 + i)]);
      CHECK((m[static_cast<std::size_t>(i * 12 + j)] == 1) == g.has_edge(i, j));
    }
  }
}
