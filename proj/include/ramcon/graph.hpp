#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace ramcon {

using Vertex = std::uint32_t;

/// Undirected edge, stored with u <= v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Undirected multigraph on vertices 0..n-1.
///
/// Loops are never stored as edges. Constructions that produce them (LPS-II)
/// have each dropped loop recorded per vertex so the pre-removal degree and
/// adjacency can be recovered; the Laplacian is the same either way.
/// Edges are kept sorted, which makes serialization canonical.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidArgument on out-of-range endpoints, or on duplicate pairs
  /// when allows_multi is false. Loop pairs (u == u) are moved into the
  /// dropped-loop counts.
  Graph(std::size_t n_vertices, std::vector<Edge> edges, bool allows_multi,
        std::vector<std::uint32_t> dropped_loops = {});

  std::size_t vertex_count() const { return n_; }
  /// Non-loop edges, counting multiplicity.
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t dropped_loop_count() const;
  bool allows_multi() const { return allows_multi_; }

  std::span<const Edge> edges() const { return edges_; }
  /// Neighbors of v with multiplicity, ascending.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  /// Degree without loops.
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::uint32_t dropped_loops(Vertex v) const { return loops_.empty() ? 0 : loops_[v]; }
  /// Degree before loop removal, each loop counting 2.
  std::size_t full_degree(Vertex v) const { return degree(v) + 2 * dropped_loops(v); }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && loops_ == other.loops_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  bool allows_multi_ = false;
  std::vector<std::uint32_t> loops_;  // empty when no loops were dropped
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

/// Incremental construction for generators.
class GraphBuilder {
 public:
  GraphBuilder(std::size_t n_vertices, bool allows_multi);

  /// Returns false when the edge is not stored: a loop (recorded as dropped)
  /// or a duplicate in a simple builder.
  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t vertex_count() const { return n_; }

  Graph build() &&;

 private:
  static std::uint64_t key(Vertex u, Vertex v);

  std::size_t n_;
  bool allows_multi_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> loops_;
  std::unordered_set<std::uint64_t> present_;
};

/// Dense symmetric real matrix.
class SymmetricMatrix {
 public:
  /// Throws InvalidArgument if m is not square and exactly symmetric.
  explicit SymmetricMatrix(Eigen::MatrixXd m);

  Eigen::Index order() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& dense() const { return m_; }

  /// All eigenvalues, ascending (dense symmetric solve).
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXd m_;
};

/// Entry (n,l) is the multiplicity of edge (n,l); zero diagonal.
SymmetricMatrix adjacency_matrix(const Graph& g);
/// As adjacency_matrix, with each dropped loop restored as 2 on the diagonal,
/// so row sums equal full_degree.
SymmetricMatrix adjacency_matrix_with_loops(const Graph& g);
SymmetricMatrix laplacian(const Graph& g);
Eigen::SparseMatrix<double> sparse_laplacian(const Graph& g);

bool is_connected(const Graph& g);
std::size_t component_count(const Graph& g);
bool is_bipartite(const Graph& g);

struct DegreeProfile {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double average_degree = 0.0;
  bool is_regular = false;
};

/// Degrees before loop removal (loops count 2). Identical to
/// loopless_degree_profile for graphs without dropped loops.
DegreeProfile degree_profile(const Graph& g);
DegreeProfile loopless_degree_profile(const Graph& g);

}  // namespace ramcon
