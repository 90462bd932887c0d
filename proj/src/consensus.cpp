#include "ramcon/consensus.hpp"

#include <algorithm>
#include <cmath>

#include "ramcon/error.hpp"
#include "ramcon/rng.hpp"

namespace ramcon {

namespace {

void require_connected(const Graph& g, const char* who) {
  if (!is_connected(g)) throw DisconnectedGraph(std::string(who) + ": graph is not connected");
}

}  // namespace

void consensus_step(const Graph& g, double alpha, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(x.size());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    double lx = static_cast<double>(g.degree(v)) * x[v];
    for (Vertex w : g.neighbors(v)) lx -= x[w];
    y[v] = x[v] - alpha * lx;
  }
}

SymmetricMatrix weight_matrix(const Graph& g, double alpha) {
  require_connected(g, "weight_matrix");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n) - alpha * laplacian(g).dense();
  return SymmetricMatrix(std::move(w));
}

double optimal_alpha(const Graph& g, const SpectralOptions& options) {
  require_connected(g, "optimal_alpha");
  const ExtremeEigenvalues ev = extreme_laplacian_eigenvalues(g, options);
  return 2.0 / (ev.lambda2 + ev.lambda_n);
}

double contraction_factor(ExtremeEigenvalues ev, double alpha) {
  return std::max(std::abs(1.0 - alpha * ev.lambda2), std::abs(1.0 - alpha * ev.lambda_n));
}

ConsensusRun run_consensus(const Graph& g, const ConsensusConfig& cfg, const Eigen::VectorXd& x0,
                           const SpectralOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  if (x0.size() != n)
    throw InvalidArgument("run_consensus: initial state has " + std::to_string(x0.size()) + " entries, graph has " +
                          std::to_string(n) + " vertices");
  if (cfg.noise_stddevs) {
    if (static_cast<Eigen::Index>(cfg.noise_stddevs->size()) != n)
      throw InvalidArgument("run_consensus: noise vector length does not match vertex count");
    if (std::any_of(cfg.noise_stddevs->begin(), cfg.noise_stddevs->end(), [](double s) { return !(s >= 0.0); }))
      throw InvalidArgument("run_consensus: noise standard deviations must be non-negative");
  }
  require_connected(g, "run_consensus");

  ExtremeEigenvalues ev{0.0, 0.0};
  if (n > 1) ev = extreme_laplacian_eigenvalues(g, options);
  const double alpha = cfg.alpha.value_or(n > 1 ? 2.0 / (ev.lambda2 + ev.lambda_n) : 0.0);
  if (cfg.alpha && !(*cfg.alpha > 0.0)) throw InvalidArgument("run_consensus: alpha must be positive");

  ConsensusRun run;
  run.alpha = alpha;
  run.contraction = n > 1 ? contraction_factor(ev, alpha) : 0.0;
  run.target_mean = x0.mean();
  run.states.reserve(cfg.max_iterations + 1);
  run.states.push_back(x0);

  Rng rng(cfg.seed);
  Eigen::VectorXd next(n);
  for (std::size_t i = 0; i < cfg.max_iterations; ++i) {
    consensus_step(g, alpha, run.states.back(), next);
    if (cfg.noise_stddevs) {
      for (Eigen::Index v = 0; v < n; ++v) next[v] += (*cfg.noise_stddevs)[v] * rng.normal();
    }
    run.states.push_back(next);
  }

  const double d0 = (x0.array() - run.target_mean).matrix().norm();
  run.deviation_norms.reserve(run.states.size());
  run.bound_values.reserve(run.states.size());
  double factor = 1.0;
  for (const auto& x : run.states) {
    run.deviation_norms.push_back((x.array() - run.target_mean).matrix().norm());
    run.bound_values.push_back(d0 * factor);
    factor *= run.contraction;
  }
  return run;
}

std::optional<std::size_t> convergence_time(const ConsensusRun& run, double rel_tol) {
  if (!(rel_tol > 0.0)) throw InvalidArgument("convergence_time: rel_tol must be positive");
  if (run.deviation_norms.empty()) return std::nullopt;
  const double target = rel_tol * run.deviation_norms.front();
  for (std::size_t i = 0; i < run.deviation_norms.size(); ++i)
    if (run.deviation_norms[i] <= target) return i;
  return std::nullopt;
}

}  // namespace ramcon
