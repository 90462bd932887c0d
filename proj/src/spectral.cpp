#include "ramcon/spectral.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ramcon/error.hpp"

namespace ramcon {

namespace {

ExtremeEigenvalues dense_extremes(const Eigen::MatrixXd& l) {
  const Eigen::Index n = l.rows();
  if (n == 1) return {0.0, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev[1], ev[n - 1]};
}

std::string budget_message(const char* what, const LanczosResult& r, const LanczosOptions& o) {
  return std::string("Lanczos did not converge for ") + what + " within " + std::to_string(o.max_iterations) +
         " iterations (residual " + std::to_string(r.residual) + ")";
}

// Iterative extreme eigenvalues of a Laplacian given as an operator. The
// grounded matrix is only needed by the shift-invert fallback for lambda2.
ExtremeEigenvalues iterative_extremes(const LinearOperator& apply, Eigen::Index n,
                                      const std::function<Eigen::SparseMatrix<double>()>& grounded,
                                      const LanczosOptions& options) {
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));

  const LanczosResult top = lanczos_extreme(apply, n, Extreme::Largest, nullptr, options);
  if (!top.converged) throw ConvergenceError(budget_message("lambda_N", top, options));

  const LanczosResult low = lanczos_extreme(apply, n, Extreme::Smallest, &ones, options);
  if (low.converged) return {low.value, top.value};

  // Clustered small eigenvalues (ring lattices): iterate on the
  // pseudo-inverse instead, whose top eigenvalue is 1/lambda2. Solving the
  // grounded system and re-centering gives L^+ b for b orthogonal to 1.
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(grounded());
  if (ldlt.info() != Eigen::Success)
    throw ConvergenceError("grounded Laplacian factorization failed (graph disconnected?)");
  LinearOperator pinv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.resize(n);
    y.head(n - 1) = ldlt.solve(x.head(n - 1));
    y[n - 1] = 0.0;
    y.array() -= y.mean();
  };
  const LanczosResult inv = lanczos_extreme(pinv, n, Extreme::Largest, &ones, options);
  if (!inv.converged || inv.value <= 0.0) throw ConvergenceError(budget_message("lambda2", inv, options));
  return {1.0 / inv.value, top.value};
}

Eigen::SparseMatrix<double> grounded_from_dense(const Eigen::MatrixXd& l) {
  const Eigen::Index m = l.rows() - 1;
  return l.topLeftCorner(m, m).sparseView();
}

RamanujanCertificate certificate_from_extremes(double k, ExtremeEigenvalues ev) {
  // Adjacency (with loops) of a k-regular graph is kI - L.
  RamanujanCertificate c;
  c.lambda_g = std::max(std::abs(k - ev.lambda2), std::abs(k - ev.lambda_n));
  c.bound = 2.0 * std::sqrt(k - 1.0);
  c.holds = c.lambda_g <= c.bound + kRamanujanSlack;
  return c;
}

struct RegularInfo {
  double k;
};

RegularInfo require_regular(const Graph& g) {
  const DegreeProfile p = degree_profile(g);
  if (!p.is_regular) throw InvalidArgument("ramanujan_certificate: graph is not regular");
  if (p.min_degree < 2) throw InvalidArgument("ramanujan_certificate: degree must be at least 2");
  return {static_cast<double>(p.min_degree)};
}

}  // namespace

ExtremeEigenvalues extreme_laplacian_eigenvalues(const SymmetricMatrix& laplacian, const SpectralOptions& options) {
  const Eigen::Index n = laplacian.order();
  if (n <= static_cast<Eigen::Index>(options.dense_limit) || n < 3) return dense_extremes(laplacian.dense());
  const Eigen::MatrixXd& l = laplacian.dense();
  LinearOperator apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() = l * x; };
  return iterative_extremes(apply, n, [&] { return grounded_from_dense(l); }, options.lanczos);
}

ExtremeEigenvalues extreme_laplacian_eigenvalues(const Graph& g, const SpectralOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  if (n <= static_cast<Eigen::Index>(options.dense_limit) || n < 3) return dense_extremes(laplacian(g).dense());
  const Eigen::SparseMatrix<double> l = sparse_laplacian(g);
  LinearOperator apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = l * x; };
  return iterative_extremes(apply, n, [&] { return Eigen::SparseMatrix<double>(l.topLeftCorner(n - 1, n - 1)); },
                            options.lanczos);
}

RamanujanCertificate ramanujan_certificate(const Graph& g, const SpectralOptions& options) {
  const double k = require_regular(g).k;
  if (!is_connected(g)) throw DisconnectedGraph("ramanujan_certificate: graph is not connected");

  const bool bipartite = is_bipartite(g);
  if (g.vertex_count() > options.dense_limit) {
    if (bipartite)
      throw InvalidArgument("ramanujan_certificate: bipartite graphs are only certified on the dense path");
    return certificate_from_extremes(k, extreme_laplacian_eigenvalues(g, options));
  }

  const Eigen::VectorXd ev = adjacency_matrix_with_loops(g).eigenvalues();
  std::vector<double> rest(ev.data(), ev.data() + ev.size());
  auto drop_one_near = [&rest](double target) {
    auto it = std::min_element(rest.begin(), rest.end(),
                               [&](double a, double b) { return std::abs(a - target) < std::abs(b - target); });
    if (it != rest.end() && std::abs(*it - target) <= kTrivialEigenvalueBand) rest.erase(it);
  };
  drop_one_near(k);
  if (bipartite) drop_one_near(-k);

  RamanujanCertificate c;
  for (double x : rest) c.lambda_g = std::max(c.lambda_g, std::abs(x));
  c.bound = 2.0 * std::sqrt(k - 1.0);
  c.holds = c.lambda_g <= c.bound + kRamanujanSlack;
  return c;
}

SpectralSummary summarize(ExtremeEigenvalues ev) {
  SpectralSummary s;
  s.lambda2 = ev.lambda2;
  s.lambda_n = ev.lambda_n;
  s.gamma = ev.lambda2 / ev.lambda_n;
  s.gamma2 = (1.0 - s.gamma) / (1.0 + s.gamma);
  s.alpha_star = 2.0 / (ev.lambda2 + ev.lambda_n);
  return s;
}

SpectralSummary spectral_summary(const Graph& g, const SpectralOptions& options) {
  if (g.vertex_count() < 2) throw InvalidArgument("spectral_summary: need at least two vertices");
  if (!is_connected(g)) throw DisconnectedGraph("spectral_summary: graph is not connected (lambda2 = 0)");

  const ExtremeEigenvalues ev = extreme_laplacian_eigenvalues(g, options);
  SpectralSummary s = summarize(ev);

  const DegreeProfile p = degree_profile(g);
  if (p.is_regular && p.min_degree >= 2) {
    const RamanujanCertificate c =
        g.vertex_count() > options.dense_limit && !is_bipartite(g)
            ? certificate_from_extremes(static_cast<double>(p.min_degree), ev)
            : ramanujan_certificate(g, options);
    s.adjacency_second = c.lambda_g;
    s.is_ramanujan = c.holds;
  }
  return s;
}

double ramanujan_gamma_lower_bound(int k) {
  if (k < 2) throw InvalidArgument("ramanujan_gamma_lower_bound: k must be at least 2");
  const double r = 2.0 * std::sqrt(static_cast<double>(k - 1));
  return (k - r) / (k + r);
}

GammaUpperBounds asymptotic_gamma_upper_bounds(int k) {
  if (k < 2) throw InvalidArgument("asymptotic_gamma_upper_bounds: k must be at least 2");
  const double r = 2.0 * std::sqrt(static_cast<double>(k - 1));
  return {(k - r) / (k + r), (k - r) / k};
}

}  // namespace ramcon
