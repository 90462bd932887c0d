#pragma once

#include <cstddef>
#include <optional>

#include "ramcon/graph.hpp"
#include "ramcon/lanczos.hpp"

namespace ramcon {

struct SpectralOptions {
  /// Graphs up to this order get a full dense eigensolve; larger ones use
  /// Lanczos (largest eigenvalue directly, lambda2 deflated against the
  /// constant vector, with a shift-invert fallback).
  std::size_t dense_limit = 1024;
  LanczosOptions lanczos{};
};

struct ExtremeEigenvalues {
  double lambda2 = 0.0;
  double lambda_n = 0.0;
};

/// Second-smallest and largest eigenvalue of a Laplacian (dense matrix).
/// Throws ConvergenceError if the iterative path exhausts its budget.
ExtremeEigenvalues extreme_laplacian_eigenvalues(const SymmetricMatrix& laplacian,
                                                 const SpectralOptions& options = {});
/// Same, working from the graph so large orders never form a dense matrix.
ExtremeEigenvalues extreme_laplacian_eigenvalues(const Graph& g, const SpectralOptions& options = {});

struct RamanujanCertificate {
  double lambda_g = 0.0;  ///< largest |adjacency eigenvalue| other than +-k
  double bound = 0.0;     ///< 2 sqrt(k - 1)
  bool holds = false;     ///< lambda_g <= bound + 1e-9
};

inline constexpr double kRamanujanSlack = 1e-9;
inline constexpr double kTrivialEigenvalueBand = 1e-6;

/// Certificate on the loop-restored adjacency of a connected k-regular graph
/// (k counted before loop removal). Throws InvalidArgument for non-regular
/// or k < 2 input and DisconnectedGraph for disconnected input.
RamanujanCertificate ramanujan_certificate(const Graph& g, const SpectralOptions& options = {});

struct SpectralSummary {
  double lambda2 = 0.0;
  double lambda_n = 0.0;
  double gamma = 0.0;       ///< lambda2 / lambda_n
  double gamma2 = 0.0;      ///< (1 - gamma) / (1 + gamma)
  double alpha_star = 0.0;  ///< 2 / (lambda2 + lambda_n)
  std::optional<double> adjacency_second;  ///< regular graphs only
  std::optional<bool> is_ramanujan;        ///< regular graphs only
};

/// Throws DisconnectedGraph: gamma has no meaning when lambda2 = 0.
SpectralSummary spectral_summary(const Graph& g, const SpectralOptions& options = {});

/// Builds the gamma-derived fields from the two extreme eigenvalues.
SpectralSummary summarize(ExtremeEigenvalues ev);

/// (k - 2 sqrt(k-1)) / (k + 2 sqrt(k-1)), the eigenratio floor for
/// non-bipartite Ramanujan graphs. Throws InvalidArgument for k < 2.
double ramanujan_gamma_lower_bound(int k);

struct GammaUpperBounds {
  double case1 = 0.0;  ///< (k - 2 sqrt(k-1)) / (k + 2 sqrt(k-1))
  double case2 = 0.0;  ///< (k - 2 sqrt(k-1)) / k
};

/// Asymptotic upper bounds on gamma for large k-regular families.
GammaUpperBounds asymptotic_gamma_upper_bounds(int k);

}  // namespace ramcon
