#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "ramcon/error.hpp"
#include "ramcon/graph.hpp"
#include "ramcon/graph_io.hpp"
#include "ramcon/rng.hpp"

using namespace ramcon;

namespace {

Graph from(std::size_t n, const oracle::EdgeList& edges, bool multi = false) {
  std::vector<Edge> e;
  for (auto [u, v] : edges) e.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  return Graph(n, std::move(e), multi);
}

void check_spectrum(const Eigen::VectorXd& got, std::vector<double> want) {
  REQUIRE(static_cast<std::size_t>(got.size()) == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) e.push_back({u, v});
  return Graph(n, std::move(e), false);
}

}  // namespace

TEST_CASE("adjacency of small graphs") {
  const auto k3 = adjacency_matrix(from(3, oracle::complete(3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k3(i, j) == (i == j ? 0.0 : 1.0));

  CHECK(adjacency_matrix(Graph(4, {}, false)).dense().isZero());

  const auto p3 = adjacency_matrix(from(3, oracle::path(3)));
  CHECK(p3(0, 1) == 1.0);
  CHECK(p3(1, 2) == 1.0);
  CHECK(p3(0, 2) == 0.0);
}

TEST_CASE("adjacency counts multiplicity and restores loops on request") {
  Graph g(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}}, true);
  CHECK(g.edge_count() == 3);
  CHECK(g.dropped_loops(2) == 1);
  CHECK(adjacency_matrix(g)(0, 1) == 2.0);
  CHECK(adjacency_matrix(g)(2, 2) == 0.0);
  CHECK(adjacency_matrix_with_loops(g)(2, 2) == 2.0);
  CHECK(g.full_degree(2) == 3);
  CHECK(g.degree(2) == 1);
}

TEST_CASE("laplacian spectra") {
  check_spectrum(laplacian(from(3, oracle::complete(3))).eigenvalues(), {0, 3, 3});
  check_spectrum(laplacian(from(3, oracle::path(3))).eigenvalues(), oracle::eigenvalues(oracle::laplacian(3, oracle::path(3))));
  check_spectrum(laplacian(from(3, oracle::path(3))).eigenvalues(), {0, 1, 3});
  const auto split = laplacian(from(3, {{0, 1}})).eigenvalues();
  CHECK(std::abs(split[0]) < 1e-12);
  CHECK(std::abs(split[1]) < 1e-12);
  CHECK(split[2] == doctest::Approx(2.0));
}

TEST_CASE("laplacian rows sum to zero and match the oracle on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(15, 0.3, seed);
    const auto l = laplacian(g).dense();
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK((Eigen::MatrixXd(sparse_laplacian(g)) - l).cwiseAbs().maxCoeff() == 0.0);
    oracle::EdgeList edges;
    for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
    const auto want = oracle::eigenvalues(oracle::laplacian(15, edges));
    const auto got = laplacian(g).eigenvalues();
    for (int i = 0; i < 15; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9).scale(1.0));
    // Zero has multiplicity equal to the component count.
    std::size_t zeros = 0;
    for (int i = 0; i < 15; ++i) zeros += std::abs(got[i]) < 1e-9;
    CHECK(zeros == component_count(g));
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(from(3, oracle::complete(3))));
  CHECK_FALSE(is_connected(from(4, {{0, 1}, {2, 3}})));
  CHECK(is_connected(Graph(1, {}, false)));
  CHECK(component_count(from(4, {{0, 1}, {2, 3}})) == 2);
}

TEST_CASE("bipartiteness") {
  CHECK(is_bipartite(from(4, oracle::cycle(4))));
  CHECK_FALSE(is_bipartite(from(5, oracle::cycle(5))));
  CHECK_FALSE(is_bipartite(from(3, oracle::complete(3))));
  CHECK_FALSE(is_bipartite(Graph(2, {{0, 1}, {1, 1}}, true)));
}

TEST_CASE("degree profile") {
  const auto k4 = degree_profile(from(4, oracle::complete(4)));
  CHECK(k4.min_degree == 3);
  CHECK(k4.max_degree == 3);
  CHECK(k4.average_degree == 3.0);
  CHECK(k4.is_regular);

  const auto p3 = degree_profile(from(3, oracle::path(3)));
  CHECK(p3.min_degree == 1);
  CHECK(p3.max_degree == 2);
  CHECK(p3.average_degree == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(p3.is_regular);

  Graph looped(2, {{0, 1}, {1, 1}, {0, 0}}, true);
  CHECK(degree_profile(looped).is_regular);
  CHECK(degree_profile(looped).min_degree == 3);
  CHECK(loopless_degree_profile(looped).max_degree == 1);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}, false), InvalidArgument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}, false), InvalidArgument);
  CHECK_NOTHROW(Graph(3, {{0, 1}, {1, 0}}, true));
  CHECK_THROWS_AS(Graph(0, {}, false), InvalidArgument);
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 2, 0;
  CHECK_THROWS_AS(SymmetricMatrix{m}, InvalidArgument);
}

TEST_CASE("edges are normalized and sorted") {
  Graph g(4, {{3, 1}, {0, 2}, {1, 0}}, false);
  std::vector<Edge> want{{0, 1}, {0, 2}, {1, 3}};
  CHECK(std::vector<Edge>(g.edges().begin(), g.edges().end()) == want);
  CHECK(g.neighbors(1).size() == 2);
}

TEST_CASE("builder rejects loops and duplicates in simple mode") {
  GraphBuilder b(3, false);
  CHECK(b.add_edge(0, 1));
  CHECK_FALSE(b.add_edge(1, 0));
  CHECK_FALSE(b.add_edge(2, 2));
  CHECK(b.has_edge(1, 0));
  const Graph g = std::move(b).build();
  CHECK(g.edge_count() == 1);
  CHECK(g.dropped_loops(2) == 1);
}

TEST_CASE("edge list round trip") {
  Graph g(4, {{0, 1}, {0, 1}, {1, 2}, {3, 3}, {2, 3}}, true);
  std::stringstream s;
  write_edge_list(s, g);
  CHECK(s.str() == "4 5\n0 1\n0 1\n1 2\n2 3\n3 3\n");
  const Graph back = read_edge_list(s);
  CHECK(back == g);
  CHECK(back.allows_multi());

  const Graph simple = random_graph(12, 0.4, 9);
  std::stringstream t;
  write_edge_list(t, simple);
  const Graph again = read_edge_list(t);
  CHECK(again == simple);
  CHECK_FALSE(again.allows_multi());
}

TEST_CASE("edge list errors name the path") {
  const auto missing = std::filesystem::temp_directory_path() / "ramcon-no-such-file.txt";
  try {
    read_edge_list(missing);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }
  std::stringstream bad("3 2\n0 1\n");
  CHECK_THROWS(read_edge_list(bad));
}
