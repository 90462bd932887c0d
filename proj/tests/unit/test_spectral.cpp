#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "ramcon/error.hpp"
#include "ramcon/generators.hpp"
#include "ramcon/lanczos.hpp"
#include "ramcon/spectral.hpp"

using namespace ramcon;

namespace {

Graph from(std::size_t n, const oracle::EdgeList& edges) {
  std::vector<Edge> e;
  for (auto [u, v] : edges) e.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  return Graph(n, std::move(e), true);
}

oracle::EdgeList edges_with_loops(const Graph& g) {
  oracle::EdgeList out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t l = 0; l < g.dropped_loops(v); ++l) out.emplace_back(v, v);
  return out;
}

SpectralOptions iterative() {
  SpectralOptions o;
  o.dense_limit = 0;
  return o;
}

}  // namespace

TEST_CASE("extreme eigenvalues of small graphs") {
  const auto k3 = extreme_laplacian_eigenvalues(laplacian(from(3, oracle::complete(3))));
  CHECK(k3.lambda2 == doctest::Approx(3.0));
  CHECK(k3.lambda_n == doctest::Approx(3.0));
  const auto c4 = extreme_laplacian_eigenvalues(from(4, oracle::cycle(4)));
  CHECK(c4.lambda2 == doctest::Approx(2.0));
  CHECK(c4.lambda_n == doctest::Approx(4.0));
  const auto split = extreme_laplacian_eigenvalues(from(4, {{0, 1}, {2, 3}}));
  CHECK(std::abs(split.lambda2) < 1e-10);
}

TEST_CASE("spectral summary") {
  for (std::size_t n : {3, 5, 8}) {
    const auto s = spectral_summary(from(n, oracle::complete(n)));
    CHECK(s.gamma == doctest::Approx(1.0));
    CHECK(std::abs(s.gamma2) < 1e-12);
    CHECK(s.alpha_star == doctest::Approx(1.0 / n));
  }
  const auto c4 = spectral_summary(from(4, oracle::cycle(4)));
  CHECK(c4.gamma == doctest::Approx(0.5));
  CHECK(c4.gamma2 == doctest::Approx(1.0 / 3.0));
  CHECK(c4.alpha_star == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(spectral_summary(from(4, {{0, 1}, {2, 3}})), DisconnectedGraph);
}

TEST_CASE("LPS-II(5,41) eigenratio against the oracle") {
  const Graph g = gen_lps2(5, 41);
  oracle::EdgeList edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.u, e.v);
  const auto ev = oracle::eigenvalues(oracle::laplacian(42, edges));
  const auto s = spectral_summary(g);
  CHECK(s.lambda2 == doctest::Approx(ev[1]).epsilon(1e-10));
  CHECK(s.lambda_n == doctest::Approx(ev[41]).epsilon(1e-10));
  CHECK(s.gamma == doctest::Approx(ev[1] / ev[41]).epsilon(1e-10));
  CHECK(s.gamma >= ramanujan_gamma_lower_bound(6) - 1e-9);
  CHECK(s.gamma2 == doctest::Approx((1 - s.gamma) / (1 + s.gamma)));
}

TEST_CASE("ramanujan certificate") {
  const auto k4 = ramanujan_certificate(from(4, oracle::complete(4)));
  CHECK(k4.lambda_g == doctest::Approx(1.0));
  CHECK(k4.bound == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(k4.holds);

  const auto c101 = ramanujan_certificate(from(101, oracle::cycle(101)));
  // Odd cycle: the extreme nontrivial eigenvalue is -2 cos(pi / 101).
  CHECK(c101.lambda_g == doctest::Approx(2.0 * std::cos(std::numbers::pi / 101)).epsilon(1e-10));
  CHECK(c101.lambda_g > 2.0 * std::cos(2.0 * std::numbers::pi / 101));
  CHECK(c101.bound == doctest::Approx(2.0));
  CHECK(c101.holds);

  const Graph g = gen_lps2(5, 41);
  const auto cert = ramanujan_certificate(g);
  const auto adj = oracle::eigenvalues(oracle::adjacency(42, edges_with_loops(g)));
  CHECK(adj.back() == doctest::Approx(6.0));
  const double second = std::max(std::abs(adj.front()), std::abs(adj[40]));
  CHECK(cert.lambda_g == doctest::Approx(second).epsilon(1e-10));
  CHECK(cert.bound == doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK(cert.holds);

  CHECK_THROWS_AS(ramanujan_certificate(from(3, oracle::path(3))), InvalidArgument);
  CHECK_THROWS_AS(ramanujan_certificate(from(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})), DisconnectedGraph);
}

TEST_CASE("iterative path agrees with the dense path") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_r3l(300, 6, 9000, seed);
    const auto dense = extreme_laplacian_eigenvalues(g);
    const auto iter = extreme_laplacian_eigenvalues(g, iterative());
    CHECK(iter.lambda2 == doctest::Approx(dense.lambda2).epsilon(1e-8));
    CHECK(iter.lambda_n == doctest::Approx(dense.lambda_n).epsilon(1e-8));
    const auto cert_dense = ramanujan_certificate(g);
    const auto cert_iter = ramanujan_certificate(g, iterative());
    CHECK(cert_iter.lambda_g == doctest::Approx(cert_dense.lambda_g).epsilon(1e-8));
  }
  const Graph lps = gen_lps2(5, 41);
  const auto cert = ramanujan_certificate(lps, iterative());
  CHECK(cert.lambda_g == doctest::Approx(ramanujan_certificate(lps).lambda_g).epsilon(1e-8));
}

TEST_CASE("clustered lambda2 on a long cycle with a hub") {
  // The hub touches every 75th vertex, so lambda_N stands alone near 21 while
  // the bottom of the spectrum is packed close to zero.
  const std::size_t n = 1500;
  auto edges = oracle::cycle(n);
  for (std::size_t v = 0; v < n; v += 75) edges.emplace_back(v, n);
  const Graph g = from(n + 1, edges);
  SpectralOptions dense;
  dense.dense_limit = 5000;
  const auto want = extreme_laplacian_eigenvalues(g, dense);
  const auto got = extreme_laplacian_eigenvalues(g);
  CHECK(got.lambda2 == doctest::Approx(want.lambda2).epsilon(1e-8));
  CHECK(got.lambda_n == doctest::Approx(want.lambda_n).epsilon(1e-10));
}

TEST_CASE("non-convergence names the budget") {
  // The top of a long cycle's spectrum is too tightly packed for 300 steps.
  const std::size_t n = 1500;
  try {
    extreme_laplacian_eigenvalues(from(n, oracle::cycle(n)));
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("300") != std::string::npos);
  }
}

TEST_CASE("lanczos on a diagonal operator") {
  const Eigen::Index n = 200;
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = 1.0 + static_cast<double>(i) * 0.5;
  const LinearOperator op = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = d.cwiseProduct(x); };
  const auto hi = lanczos_extreme(op, n, Extreme::Largest, nullptr, {});
  CHECK(hi.converged);
  CHECK(hi.value == doctest::Approx(d[n - 1]));
  const auto lo = lanczos_extreme(op, n, Extreme::Smallest, nullptr, {});
  CHECK(lo.value == doctest::Approx(1.0));
  Eigen::VectorXd e0 = Eigen::VectorXd::Unit(n, 0);
  const auto deflated = lanczos_extreme(op, n, Extreme::Smallest, &e0, {});
  CHECK(deflated.value == doctest::Approx(1.5));
  LanczosOptions tight;
  tight.max_iterations = 2;
  CHECK_FALSE(lanczos_extreme(op, n, Extreme::Smallest, nullptr, tight).converged);
}

TEST_CASE("ramanujan gamma bounds") {
  CHECK(ramanujan_gamma_lower_bound(6) == doctest::Approx(0.1458980337503154).epsilon(1e-12));
  CHECK(ramanujan_gamma_lower_bound(18) == doctest::Approx(0.37162654279503297).epsilon(1e-12));
  CHECK(std::abs(ramanujan_gamma_lower_bound(2)) < 1e-15);
  CHECK_THROWS_AS(ramanujan_gamma_lower_bound(1), InvalidArgument);
  const auto b18 = asymptotic_gamma_upper_bounds(18);
  CHECK(b18.case1 == doctest::Approx(0.37162654279503297).epsilon(1e-12));
  CHECK(b18.case2 == doctest::Approx(0.54187715270914883).epsilon(1e-12));
  const auto b2 = asymptotic_gamma_upper_bounds(2);
  CHECK(std::abs(b2.case1) < 1e-15);
  CHECK(std::abs(b2.case2) < 1e-15);
}
