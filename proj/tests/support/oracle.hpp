#pragma once

// Reference computations for the tests. Nothing here calls into the library
// or Eigen: matrices are plain nested vectors and eigenvalues come from a
// cyclic Jacobi rotation sweep.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;

/// All eigenvalues of a symmetric matrix, ascending.
std::vector<double> eigenvalues(Matrix a);

/// Adjacency with multiplicity; a pair (u, u) adds 2 on the diagonal.
Matrix adjacency(std::size_t n, const EdgeList& edges);
/// D - A from the edge list, loops ignored.
Matrix laplacian(std::size_t n, const EdgeList& edges);

EdgeList complete(std::size_t n);
EdgeList cycle(std::size_t n);
EdgeList path(std::size_t n);

/// Upper-tail normal probability by numeric integration of the density.
double q_tail(double x);

/// Naive (W^i) computed by repeated dense multiplication.
Matrix matrix_power(const Matrix& w, std::size_t i);
Matrix multiply(const Matrix& a, const Matrix& b);

}  // namespace oracle
