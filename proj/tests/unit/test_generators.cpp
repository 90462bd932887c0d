#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "ramcon/error.hpp"
#include "ramcon/generators.hpp"
#include "ramcon/numtheory.hpp"
#include "ramcon/spectral.hpp"

using namespace ramcon;
namespace nt = ramcon::numtheory;

namespace {

std::set<std::pair<Vertex, Vertex>> edge_set(const Graph& g) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : g.edges()) out.insert({e.u, e.v});
  return out;
}

bool simple_without_loops(const Graph& g) {
  const auto s = edge_set(g);
  return s.size() == g.edge_count() && g.dropped_loop_count() == 0 &&
         std::none_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.u == e.v; });
}

}  // namespace

TEST_CASE("family names") {
  for (Family f : {Family::RRL, Family::WS1, Family::ER, Family::LPS1, Family::LPS2, Family::R3L})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("ws2"), InvalidArgument);
}

TEST_CASE("ring lattice") {
  const Graph c6 = gen_rrl(6, 2);
  CHECK(edge_set(c6) == std::set<std::pair<Vertex, Vertex>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  const Graph r10 = gen_rrl(10, 4);
  for (Vertex i = 0; i < 10; ++i) {
    std::set<Vertex> nb(r10.neighbors(i).begin(), r10.neighbors(i).end());
    CHECK(nb == std::set<Vertex>{(i + 1) % 10, (i + 2) % 10, (i + 8) % 10, (i + 9) % 10});
  }
  CHECK(gen_rrl(42, 6).edge_count() == 126);
  CHECK_THROWS_AS(gen_rrl(10, 3), InvalidArgument);
  CHECK_THROWS_AS(gen_rrl(4, 4), InvalidArgument);
}

TEST_CASE("watts-strogatz rewiring") {
  CHECK(gen_ws1(30, 4, 0.0, 7) == gen_rrl(30, 4));
  for (double pw : {0.1, 0.5, 0.8, 1.0}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = gen_ws1(40, 6, pw, seed);
      CHECK(g.edge_count() == 120);
      CHECK(simple_without_loops(g));
    }
  }
  CHECK(gen_ws1(40, 6, 0.5, 3) == gen_ws1(40, 6, 0.5, 3));
  CHECK_FALSE(gen_ws1(40, 6, 0.5, 3) == gen_ws1(40, 6, 0.5, 4));
  CHECK_THROWS_AS(gen_ws1(40, 6, 1.5, 3), InvalidArgument);
}

TEST_CASE("erdos-renyi edge budget") {
  CHECK(edge_set(gen_er(4, 3, 1)).size() == 6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen_er(50, 6, seed);
    CHECK(g.edge_count() == 150);
    CHECK(simple_without_loops(g));
    CHECK(degree_profile(g).average_degree == doctest::Approx(6.0));
  }
  CHECK_THROWS_AS(gen_er(4, 4, 1), InvalidArgument);
}

TEST_CASE("erdos-renyi degrees spread out") {
  int above = 0;
  double mean_max = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto d = degree_profile(gen_er(1000, 18, seed));
    above += d.max_degree > 18;
    mean_max += static_cast<double>(d.max_degree) / 100.0;
  }
  CHECK(above >= 95);
  // Binomial(999, 0.018) has standard deviation about 4.2; the maximum of
  // 1000 draws sits around mean + 3 sd.
  CHECK(mean_max > 25);
  CHECK(mean_max < 40);
}

TEST_CASE("LPS-II(5,41)") {
  const Graph g = gen_lps2(5, 41);
  CHECK(g.vertex_count() == 42);
  const auto full = degree_profile(g);
  CHECK(full.min_degree == 6);
  CHECK(full.max_degree == 6);
  CHECK(full.average_degree == 6.0);
  CHECK(full.is_regular);
  // Six vertices carry a loop; removing it leaves them with degree 4.
  std::size_t looped = 0;
  for (Vertex v = 0; v < 42; ++v) looped += g.dropped_loops(v) > 0;
  CHECK(looped == 6);
  CHECK(loopless_degree_profile(g).min_degree == 4);
  CHECK(is_connected(g));
  CHECK_FALSE(is_bipartite(g));
}

TEST_CASE("LPS-II arcs pair up with inverse generators") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 29}, {5, 41}, {13, 17}, {17, 13}, {5, 61}}) {
    const auto gens = nt::lps_generators(p, q);
    std::map<std::pair<nt::Residue, nt::Residue>, int> arcs;
    for (nt::Residue x = 0; x <= q; ++x)
      for (const auto& s : gens) ++arcs[{x, nt::lft_apply(s, x, q)}];
    for (const auto& [arc, count] : arcs) CHECK(arcs[{arc.second, arc.first}] == count);
    const Graph g = gen_lps2(p, q);
    CHECK(g.vertex_count() == static_cast<std::size_t>(q + 1));
    CHECK(degree_profile(g).is_regular);
    CHECK(degree_profile(g).max_degree == static_cast<std::size_t>(p + 1));
  }
}

TEST_CASE("LPS-I generator set is closed under inversion") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{17, 13}, {5, 29}, {13, 17}}) {
    std::set<nt::PslElement> classes;
    for (const auto& s : nt::lps_generators(p, q)) classes.insert(nt::psl_canonicalize(s, q));
    for (const auto& s : nt::lps_generators(p, q)) {
      const nt::Mat2 adj{s.d, nt::reduce(-s.b, q), nt::reduce(-s.c, q), s.a};  // inverse up to the scalar det
      CHECK(classes.count(nt::psl_canonicalize(adj, q)) == 1);
    }
  }
}

TEST_CASE("LPS-I(17,13) shape") {
  const Graph g = gen_lps1(17, 13);
  CHECK(g.vertex_count() == 1092);
  const auto d = degree_profile(g);
  CHECK(d.is_regular);
  CHECK(d.min_degree == 18);
  CHECK(is_connected(g));
  CHECK_FALSE(is_bipartite(g));
}

TEST_CASE("LPS parameter errors") {
  CHECK_THROWS_AS(gen_lps1(5, 13), InvalidArgument);  // (5/13) = -1
  CHECK_THROWS_AS(gen_lps2(7, 41), InvalidArgument);
  CHECK_THROWS_AS(gen_lps2(5, 43), InvalidArgument);
  GeneratorParams big;
  big.family = Family::LPS1;
  big.p = 5;
  big.q = 41;
  CHECK_THROWS_AS(validate(big), InvalidArgument);
}

TEST_CASE("random regular swaps") {
  CHECK(gen_r3l(30, 4, 0, 1) == gen_rrl(30, 4));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorStats stats;
    const Graph g = gen_r3l(42, 6, 1260, seed, &stats);
    const auto d = degree_profile(g);
    CHECK(d.is_regular);
    CHECK(d.min_degree == 6);
    CHECK(simple_without_loops(g));
    CHECK(is_connected(g));
    CHECK(g.edge_count() == 126);
  }
  CHECK(gen_r3l(42, 6, 100, 5) == gen_r3l(42, 6, 100, 5));
  CHECK_THROWS_AS(gen_r3l(5, 4, 10, 1), InvalidArgument);
}

TEST_CASE("nominal size and dispatch") {
  GeneratorParams p;
  p.family = Family::LPS2;
  p.p = 5;
  p.q = 41;
  CHECK(nominal_size(p) == std::pair<std::size_t, std::size_t>{42, 6});
  CHECK(generate(p) == gen_lps2(5, 41));
  p.family = Family::LPS1;
  p.p = 17;
  p.q = 13;
  CHECK(nominal_size(p) == std::pair<std::size_t, std::size_t>{1092, 18});
  GeneratorParams r;
  r.family = Family::R3L;
  r.n = 42;
  r.k = 6;
  r.seed = 3;
  CHECK(generate(r) == gen_r3l(42, 6, default_r3l_swaps(42, 6), 3));
  CHECK(default_r3l_swaps(42, 6) == 1260);
}
