#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "zdim/counting.hpp"
#include "zdim/zdgraph.hpp"

using namespace zdim;

namespace {

Vertex vertex(const ZeroDivisorGraph& g, const char* text) {
  auto v = g.index_of(Matrix::parse(text, g.q));
  REQUIRE(v.has_value());
  return *v;
}

}  // namespace

TEST_SUITE("zdgraph") {
  TEST_CASE("vertex counts") {
    CHECK(build_graph(builtin_boolean(), 2).size() == 8);
    CHECK(build_graph(builtin_boolean(), 3).size() == 246);
    CHECK(build_graph(builtin_chain(3), 2).size() == 24);
    CHECK_THROWS_AS(build_graph(builtin_chain(3), 4, {1000, 1}), BudgetExceeded);
  }

  TEST_CASE("adjacency is symmetric and loop free") {
    for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const auto zg = build_graph(builtin_chain(q), n);
      const auto& g = zg.graph;
      for (Vertex u = 0; u < g.size(); ++u) {
        CHECK_FALSE(g.adjacent(u, u));
        for (Vertex v = 0; v < g.size(); ++v) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      }
      CHECK(BigInt(zg.size()) == count_zero_divisors(n, q) - 1);
      for (Vertex v = 1; v < zg.size(); ++v) CHECK(zg.ranks[v - 1] < zg.ranks[v]);
    }
  }

  TEST_CASE("class-based adjacency agrees with direct products") {
    for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const auto s = builtin_chain(q);
      const auto zg = build_graph(s, n, {kDefaultMatrixCap, 3});
      const auto direct = oracle::direct_graph(s, n);
      REQUIRE(direct.vertices == zg.vertices);
      for (Vertex u = 0; u < zg.size(); ++u) {
        std::vector<Vertex> expected(direct.adj[u].begin(), direct.adj[u].end());
        std::sort(expected.begin(), expected.end());
        CHECK(zg.graph.neighbors(u) == expected);
      }
    }
  }

  TEST_CASE("bitset BFS agrees with queue BFS") {
    for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const auto zg = build_graph(builtin_chain(q), n);
      const auto d = all_pairs_distances(zg.graph, 2);
      const auto expected = oracle::queue_bfs_all_pairs(zg.graph);
      for (Vertex u = 0; u < zg.size(); ++u)
        for (Vertex v = 0; v < zg.size(); ++v) CHECK(d.at(u, v) == expected[u][v]);
    }
  }

  TEST_CASE("distances in the 2x2 Boolean graph") {
    const auto zg = build_graph(builtin_boolean(), 2);
    const auto d = distances_from(zg.graph, vertex(zg, "0,0;1,1"));
    CHECK(d[vertex(zg, "0,0;1,1")] == 0);
    CHECK(d[vertex(zg, "1,1;0,0")] == 3);
    CHECK(diameter(zg.graph) == 3);
  }

  TEST_CASE("diameter of fixtures") {
    CHECK(diameter(complete_graph(5)) == 1);
    CHECK(diameter(path_graph(4)) == 3);
    Graph split(4);
    split.add_edge(0, 1);
    split.add_edge(2, 3);
    CHECK_THROWS_AS(diameter(split), DisconnectedGraph);
    const auto d = distances_from(split, 0);
    CHECK(d[2] == kInfinity);
  }

  TEST_CASE("twin partition of fixtures") {
    const auto p3 = twin_classes(path_graph(3));
    REQUIRE(p3.blocks.size() == 2);
    CHECK(p3.blocks[0].members == std::vector<Vertex>{0, 2});
    CHECK(p3.blocks[0].kind == TwinKind::kOpen);
    CHECK(p3.blocks[1].members == std::vector<Vertex>{1});
    CHECK(p3.blocks[1].kind == TwinKind::kSingleton);

    const auto k4 = twin_classes(complete_graph(4));
    REQUIRE(k4.blocks.size() == 1);
    CHECK(k4.blocks[0].kind == TwinKind::kClosed);
  }

  TEST_CASE("twin blocks are maximal and internally consistent") {
    for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
      const auto zg = build_graph(builtin_chain(q), n);
      const auto& g = zg.graph;
      const auto twins = twin_classes(g);
      for (Vertex u = 0; u < g.size(); ++u) {
        for (Vertex v = u + 1; v < g.size(); ++v) {
          CHECK(are_twins(g, u, v) == (twins.block_of[u] == twins.block_of[v]));
        }
      }
      for (const auto& block : twins.blocks) {
        for (std::size_t a = 1; a < block.members.size(); ++a) {
          const Vertex u = block.members[0], v = block.members[a];
          if (block.kind == TwinKind::kOpen) CHECK(open_twins(g, u, v));
          if (block.kind == TwinKind::kClosed) CHECK(closed_twins(g, u, v));
        }
      }
    }
  }

  TEST_CASE("Boolean twin blocks are exactly the support classes") {
    for (int n = 2; n <= 3; ++n) {
      const auto zg = build_graph(builtin_boolean(), n);
      const auto twins = twin_classes(zg.graph);
      for (Vertex u = 0; u < zg.size(); ++u)
        for (Vertex v = u + 1; v < zg.size(); ++v)
          CHECK((zg.classes[u] == zg.classes[v]) == (twins.block_of[u] == twins.block_of[v]));
    }
  }

  TEST_CASE("equal patterns are twins over chain3") {
    const auto zg = build_graph(builtin_chain(3), 2);
    for (Vertex u = 0; u < zg.size(); ++u) {
      for (Vertex v = u + 1; v < zg.size(); ++v) {
        if (pattern(zg.vertices[u]) == pattern(zg.vertices[v])) {
          CHECK(are_twins(zg.graph, u, v));
        }
      }
    }
  }

  TEST_CASE("single-threaded and multi-threaded builds match") {
    const auto one = build_graph(builtin_boolean(), 3, {kDefaultMatrixCap, 1});
    const auto many = build_graph(builtin_boolean(), 3, {kDefaultMatrixCap, 4});
    for (Vertex v = 0; v < one.size(); ++v) CHECK(one.graph.neighbors(v) == many.graph.neighbors(v));
  }

  TEST_CASE("DOT and CSV export") {
    const auto zg = build_graph(builtin_boolean(), 2);
    std::ostringstream dot;
    write_dot(zg, dot);
    const std::string text = dot.str();
    CHECK(text.find("graph zero_divisor {") == 0);
    std::size_t nodes = 0, edges = 0, pos = 0;
    while ((pos = text.find("[label=", pos)) != std::string::npos) ++nodes, ++pos;
    pos = 0;
    while ((pos = text.find(" -- ", pos)) != std::string::npos) ++edges, ++pos;
    CHECK(nodes == 8);
    CHECK(edges == zg.graph.edge_count());
    CHECK(text.find("label=\"0,0;1,1\"") != std::string::npos);

    std::ostringstream csv;
    write_distance_csv(zg, all_pairs_distances(zg.graph), csv);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "rank,1,2,3,4,5,8,10,12");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 8);
  }
}
