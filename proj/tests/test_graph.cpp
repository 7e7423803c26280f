#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mixedisc/graph.hpp"

using namespace mixedisc;

TEST_CASE("build collapses duplicates and both orientations") {
  const auto a = AdjacencyMatrix::build(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(a.edge_count() == 2);
  CHECK(a.degree(0) == 1);
  CHECK(a.degree(1) == 2);
  CHECK(a.degree(2) == 1);
  CHECK(a.has_edge(0, 1));
  CHECK(a.has_edge(1, 0));
  CHECK(a.has_edge(1, 2));
  CHECK(!a.has_edge(0, 2));
}

TEST_CASE("empty graph") {
  const auto a = AdjacencyMatrix::build(2, {});
  CHECK(a.edge_count() == 0);
  const auto d = degrees(a);
  CHECK(d.max == 0);
  CHECK(d.min == 0);
}

TEST_CASE("self-loop rejected with the pair named") {
  CHECK_THROWS_WITH_AS(AdjacencyMatrix::build(3, {{0, 0}}),
                       doctest::Contains("self-loop (0, 0)"), std::invalid_argument);
}

TEST_CASE("out-of-range endpoint rejected") {
  CHECK_THROWS_AS(AdjacencyMatrix::build(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(AdjacencyMatrix::build(3, {{-1, 1}}), std::invalid_argument);
}

TEST_CASE("dense and sparse views agree and are symmetric") {
  const auto a = AdjacencyMatrix::build(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const Eigen::MatrixXd d = a.to_dense();
  CHECK(d.isApprox(d.transpose()));
  CHECK(d.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(Eigen::MatrixXd(a.to_sparse()).isApprox(d));
}

TEST_CASE("connectivity") {
  CHECK(AdjacencyMatrix::build(3, {{0, 1}, {1, 2}}).connected());
  CHECK(!AdjacencyMatrix::build(4, {{0, 1}, {2, 3}}).connected());
  CHECK(!AdjacencyMatrix::build(2, {}).connected());
  CHECK(AdjacencyMatrix::build(1, {}).connected());
}

TEST_CASE("edge list text round trip with comments and duplicates") {
  const char* path = "test_graph_edges.tmp";
  {
    std::ofstream out(path);
    out << "# a comment\n0 1\n1 0\n1 2\n\n2 0\n";
  }
  const EdgeList edges = read_edge_list(path);
  CHECK(edges.size() == 4);
  const auto a = AdjacencyMatrix::build(3, edges);
  CHECK(a.edge_count() == 3);
  std::remove(path);
}

TEST_CASE("malformed edge line reports the line number") {
  const char* path = "test_graph_bad.tmp";
  {
    std::ofstream out(path);
    out << "0 1\nnot numbers\n";
  }
  CHECK_THROWS_WITH_AS(read_edge_list(path), doctest::Contains(":2"), std::runtime_error);
  std::remove(path);
}

TEST_CASE("non-contiguous ids are remapped in ascending order") {
  const RemappedEdges r = remap_node_ids({{30, 10}, {10, 20}});
  CHECK(r.original_ids == std::vector<std::int64_t>{10, 20, 30});
  CHECK(r.edges[0] == std::pair<std::int64_t, std::int64_t>{2, 0});
  CHECK(r.edges[1] == std::pair<std::int64_t, std::int64_t>{0, 1});
}
