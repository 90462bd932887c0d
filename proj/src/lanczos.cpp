#include "ramcon/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include "ramcon/error.hpp"
#include "ramcon/rng.hpp"

namespace ramcon {

namespace {

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Eigen::Index used,
                   const Eigen::VectorXd* deflate) {
  // Two passes of classical Gram-Schmidt keep the basis orthogonal to
  // working precision.
  for (int pass = 0; pass < 2; ++pass) {
    if (deflate) w -= deflate->dot(w) * *deflate;
    if (used > 0) {
      const auto v = basis.leftCols(used);
      w -= v * (v.transpose() * w);
    }
  }
}

}  // namespace

LanczosResult lanczos_extreme(const LinearOperator& op, Eigen::Index n, Extreme which,
                              const Eigen::VectorXd* deflate, const LanczosOptions& options) {
  if (n <= 0) throw InvalidArgument("lanczos: operator order must be positive");
  const Eigen::Index space = deflate ? n - 1 : n;
  if (space <= 0) throw InvalidArgument("lanczos: nothing left after deflation");
  const Eigen::Index m_max = std::min<Eigen::Index>(options.max_iterations, space);

  Eigen::MatrixXd basis(n, m_max);
  Eigen::VectorXd alpha(m_max), beta(m_max);

  Rng rng(options.seed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  orthogonalize(v, basis, 0, deflate);
  v.normalize();

  LanczosResult result;
  Eigen::VectorXd w(n);
  // Ritz values are checked every 8 steps; the tridiagonal solve is the
  // dominant cost otherwise.
  for (Eigen::Index j = 0; j < m_max; ++j) {
    basis.col(j) = v;
    op(v, w);
    alpha[j] = v.dot(w);
    orthogonalize(w, basis, j + 1, deflate);
    beta[j] = w.norm();

    const Eigen::Index m = j + 1;
    const bool breakdown = beta[j] <= 1e-14 * std::max(1.0, std::abs(alpha[j]));
    if (m % 8 != 0 && m != m_max && m != space && !breakdown) {
      v = w / beta[j];
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1), Eigen::ComputeEigenvectors);
    const Eigen::Index pick = which == Extreme::Largest ? m - 1 : 0;
    result.value = tri.eigenvalues()[pick];
    result.residual = std::abs(beta[j] * tri.eigenvectors()(m - 1, pick));
    result.iterations = static_cast<int>(m);

    if (m == space || breakdown || result.residual <= options.tolerance * std::abs(result.value)) {
      result.converged = true;
      break;
    }
    v = w / beta[j];
  }
  return result;
}

}  // namespace ramcon
