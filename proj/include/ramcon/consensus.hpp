#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ramcon/graph.hpp"
#include "ramcon/spectral.hpp"

namespace ramcon {

/// y = (I - alpha L) x through neighbor lists, O(N + M).
void consensus_step(const Graph& g, double alpha, const Eigen::VectorXd& x, Eigen::VectorXd& y);

/// W = I - alpha L. Throws DisconnectedGraph for a disconnected graph.
SymmetricMatrix weight_matrix(const Graph& g, double alpha);

/// 2 / (lambda2 + lambda_N). Throws DisconnectedGraph.
double optimal_alpha(const Graph& g, const SpectralOptions& options = {});

/// Per-step contraction of the disagreement for weight alpha:
/// max(|1 - alpha lambda2|, |1 - alpha lambda_N|). Equals gamma2 at alpha*.
double contraction_factor(ExtremeEigenvalues ev, double alpha);

struct ConsensusConfig {
  std::optional<double> alpha;  ///< defaults to alpha*
  std::size_t max_iterations = 100;
  /// Per-node channel-noise standard deviations; absent means noiseless.
  std::optional<std::vector<double>> noise_stddevs;
  std::uint64_t seed = 0;
};

struct ConsensusRun {
  std::vector<Eigen::VectorXd> states;  ///< x_0 .. x_T
  double target_mean = 0.0;
  double alpha = 0.0;
  double contraction = 0.0;            ///< bound ratio per iteration
  std::vector<double> deviation_norms; ///< ||x_i - mean(x_0) 1||
  std::vector<double> bound_values;    ///< ||x_0 - mean 1|| * contraction^i
};

/// x_{i+1} = W x_i (+ n_i with n_i ~ N(0, diag(phi^2)) in noisy mode).
/// Noise draws come from one stream seeded with cfg.seed, node-major per
/// iteration. Throws InvalidArgument on dimension or parameter mismatch and
/// DisconnectedGraph for a disconnected graph.
ConsensusRun run_consensus(const Graph& g, const ConsensusConfig& cfg, const Eigen::VectorXd& x0,
                           const SpectralOptions& options = {});

/// First i with deviation_norms[i] <= rel_tol * deviation_norms[0];
/// nullopt if the run never gets there.
std::optional<std::size_t> convergence_time(const ConsensusRun& run, double rel_tol);

}  // namespace ramcon
