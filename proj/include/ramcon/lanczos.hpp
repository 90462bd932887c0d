#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace ramcon {

/// y = Op x for a symmetric operator.
using LinearOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosOptions {
  int max_iterations = 300;
  /// Converged when the Ritz residual |beta_m s_m| <= tolerance * |theta|.
  double tolerance = 1e-11;
  std::uint64_t seed = 0x5eed;
};

enum class Extreme { Largest, Smallest };

struct LanczosResult {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Extreme eigenvalue of a symmetric operator of order n by Lanczos with full
/// reorthogonalization. When `deflate` is given (unit norm), the iteration is
/// confined to its orthogonal complement. Never throws on non-convergence;
/// callers check `converged`.
LanczosResult lanczos_extreme(const LinearOperator& op, Eigen::Index n, Extreme which,
                              const Eigen::VectorXd* deflate, const LanczosOptions& options);

}  // namespace ramcon
