#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ramcon/graph.hpp"
#include "ramcon/spectral.hpp"

namespace ramcon {

/// Gaussian shift-in-mean hypotheses H_m: y = mu_m + N(0, sigma2) with
/// mu_1 = -mu_0 = mu, plus per-node channel noise phi (empty = noiseless).
struct DetectionModel {
  double mu = 1.0;
  double sigma2 = 1.0;
  std::size_t n_sensors = 1;
  std::vector<double> phi;
  double threshold = 0.0;

  /// Throws InvalidArgument on mu <= 0, sigma2 <= 0, negative phi, or a phi
  /// vector whose length is not n_sensors.
  void validate() const;
  double phi_max() const;
  double phi_at(std::size_t n) const { return phi.empty() ? 0.0 : phi[n]; }
  bool noiseless() const { return phi_max() == 0.0; }
  /// 4 mu^2 / sigma2: variance of one local LLR.
  double llr_variance() const { return 4.0 * mu * mu / sigma2; }
  /// 2 mu mu_m / sigma2.
  double llr_mean(int hypothesis) const { return (hypothesis == 1 ? 2.0 : -2.0) * mu * mu / sigma2; }
};

/// Upper-tail standard normal probability, 0.5 erfc(x / sqrt 2).
double q_function(double x);
/// ln Q(x), finite for every x (asymptotic series past x = 20).
double log_q_function(double x);

/// ln f(y|H1)/f(y|H0) = 2 mu y / sigma2.
double local_llr(double y, const DetectionModel& model);

/// Q(d/2), d = 2 mu sqrt(N) / sigma: the fusion-center error probability.
double parallel_fusion_pe(const DetectionModel& model);

struct StateMoments {
  Eigen::VectorXd means;
  Eigen::VectorXd variances;
};

/// Exact per-node moments of the consensus state under noisy links,
/// Sigma_i = W^i Sigma_0 W^i + sum_{k<i} W^k R W^k with Sigma_0 = (4 mu^2/sigma2) I.
/// Built once per graph from the Laplacian eigendecomposition; noise with
/// unequal phi falls back to explicit powers of W.
class AnalyticDetector {
 public:
  /// alpha defaults to alpha*. Throws DisconnectedGraph.
  AnalyticDetector(const Graph& g, DetectionModel model, std::optional<double> alpha = std::nullopt);

  const DetectionModel& model() const { return model_; }
  double alpha() const { return alpha_; }
  double gamma2() const { return gamma2_; }

  /// diag(Sigma_i) for i = 0..max_iter.
  std::vector<Eigen::VectorXd> variance_trajectory(std::size_t max_iter) const;
  /// diag(Sigma_i) for noiseless links (phi ignored), O(N^2).
  Eigen::VectorXd noiseless_variances(std::size_t i) const;
  StateMoments moments(std::size_t i, int hypothesis) const;

  /// Q((2 mu^2/sigma2) / sqrt(var_n)), per node.
  Eigen::VectorXd error_probabilities(const Eigen::VectorXd& variances) const;

 private:
  DetectionModel model_;
  double alpha_ = 0.0;
  double gamma2_ = 0.0;
  Eigen::VectorXd w_eigenvalues_;  // 1 - alpha lambda_m
  Eigen::MatrixXd weights_sq_;     // U .* U
  Eigen::MatrixXd w_;              // dense W, heterogeneous noise only
};

StateMoments analytic_state_moments(const Graph& g, const DetectionModel& model, std::size_t i, int hypothesis);

/// Upper bound on every node's state variance at iteration i for the
/// optimal equal weight; the noise term uses phi_max.
double variance_upper_bound(double gamma2, const DetectionModel& model, std::size_t i);
double variance_upper_bound(const Graph& g, const DetectionModel& model, std::size_t i);

/// Continuous extension f(z) of variance_upper_bound in the iteration count.
double stopping_objective(double z, double gamma2, const DetectionModel& model);

struct StoppingAnalysis {
  double gamma2 = 0.0;
  bool assumption_holds = false;  ///< 4 mu^2/sigma2 > phi_max^2 / (1 - gamma2^2)
  std::optional<double> z_star;   ///< unique minimizer of f; absent if none
  std::size_t i_star = 0;
  double f_floor = 0.0;
  double f_ceil = 0.0;
  bool worthwhile = false;        ///< min(f_floor, f_ceil) < 4 mu^2/sigma2
  double reduction_factor = 0.0;  ///< (4 mu^2/sigma2) / f(i_star)
};

/// With noiseless links f decreases forever: no z*, i_star = budget.
/// A violated power assumption is reported, not thrown.
StoppingAnalysis optimal_stopping(double gamma2, const DetectionModel& model, std::size_t budget = 1000);
StoppingAnalysis optimal_stopping(const Graph& g, const DetectionModel& model, std::size_t budget = 1000);

struct PeCurve {
  std::vector<Eigen::VectorXd> analytic;   ///< [i][n]
  std::vector<Eigen::VectorXd> empirical;  ///< [i][n]; empty when trials == 0
  std::vector<Eigen::VectorXd> variances;  ///< exact diag(Sigma_i)
  std::size_t trials = 0;

  double mean_analytic(std::size_t i) const { return analytic[i].mean(); }
  double mean_empirical(std::size_t i) const { return empirical[i].mean(); }
  /// sqrt(p(1-p)/trials) at the analytic p.
  double standard_error(std::size_t i, std::size_t n) const;
  /// Average of the per-node standard errors; bounds the standard error of
  /// the node-averaged rate whatever the correlation between nodes.
  double mean_standard_error(std::size_t i) const;
};

/// Monte Carlo error rates over measurement and channel noise for
/// i = 0..max_iter, alongside the analytic rates. Trial t runs under H1 when
/// t is odd and H0 otherwise, on stream Rng::split(seed, t); each trial draws
/// N measurement noises, then N channel noises per iteration.
PeCurve empirical_pe_curve(const Graph& g, const DetectionModel& model, std::size_t max_iter, std::size_t trials,
                           std::uint64_t seed);

inline constexpr double kConvergenceSlack = 1.1;

/// Smallest i with mean_n P_e(i, n) <= 1.1 * parallel_fusion_pe, on the
/// analytic noiseless path (phi is ignored). nullopt past the budget.
std::optional<std::size_t> detection_convergence_time(const Graph& g, const DetectionModel& model,
                                                      std::size_t budget = 1'000'000);
std::optional<std::size_t> detection_convergence_time(const AnalyticDetector& detector,
                                                      std::size_t budget = 1'000'000);

}  // namespace ramcon
