#include "ramcon/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "ramcon/error.hpp"

namespace ramcon {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges, bool allows_multi,
             std::vector<std::uint32_t> dropped_loops)
    : n_(n_vertices), allows_multi_(allows_multi), loops_(std::move(dropped_loops)) {
  if (n_ == 0) throw InvalidArgument("graph needs at least one vertex");
  if (!loops_.empty() && loops_.size() != n_)
    throw InvalidArgument("dropped-loop vector must have one entry per vertex");

  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= n_ || e.v >= n_)
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") out of range for " + std::to_string(n_) + " vertices");
    if (e.u == e.v) {
      if (loops_.empty()) loops_.assign(n_, 0);
      ++loops_[e.u];
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end());
  if (!allows_multi_ && std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InvalidArgument("duplicate edge in a simple graph");
  if (!loops_.empty() && std::all_of(loops_.begin(), loops_.end(), [](auto c) { return c == 0; }))
    loops_.clear();

  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adjacency_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n_; ++v)
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
}

std::size_t Graph::dropped_loop_count() const {
  return std::accumulate(loops_.begin(), loops_.end(), std::size_t{0});
}

GraphBuilder::GraphBuilder(std::size_t n_vertices, bool allows_multi)
    : n_(n_vertices), allows_multi_(allows_multi) {
  if (n_ == 0) throw InvalidArgument("graph needs at least one vertex");
}

std::uint64_t GraphBuilder::key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint out of range");
  if (u == v) {
    if (loops_.empty()) loops_.assign(n_, 0);
    ++loops_[u];
    return false;
  }
  const bool fresh = present_.insert(key(u, v)).second;
  if (!fresh && !allows_multi_) return false;
  edges_.push_back({std::min(u, v), std::max(u, v)});
  return true;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const { return present_.contains(key(u, v)); }

Graph GraphBuilder::build() && {
  return Graph(n_, std::move(edges_), allows_multi_, std::move(loops_));
}

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvalidArgument("symmetric matrix must be square");
  if (m_ != m_.transpose()) throw InvalidArgument("matrix is not symmetric");
}

Eigen::VectorXd SymmetricMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

SymmetricMatrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) += 1.0;
    a(e.v, e.u) += 1.0;
  }
  return SymmetricMatrix(std::move(a));
}

SymmetricMatrix adjacency_matrix_with_loops(const Graph& g) {
  Eigen::MatrixXd a = adjacency_matrix(g).dense();
  for (Vertex v = 0; v < g.vertex_count(); ++v) a(v, v) = 2.0 * g.dropped_loops(v);
  return SymmetricMatrix(std::move(a));
}

SymmetricMatrix laplacian(const Graph& g) {
  Eigen::MatrixXd l = -adjacency_matrix(g).dense();
  for (Vertex v = 0; v < g.vertex_count(); ++v) l(v, v) = static_cast<double>(g.degree(v));
  return SymmetricMatrix(std::move(l));
}

Eigen::SparseMatrix<double> sparse_laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count() + g.vertex_count());
  for (const Edge& e : g.edges()) {
    triplets.emplace_back(e.u, e.v, -1.0);
    triplets.emplace_back(e.v, e.u, -1.0);
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    triplets.emplace_back(v, v, static_cast<double>(g.degree(v)));
  Eigen::SparseMatrix<double> l(n, n);
  l.setFromTriplets(triplets.begin(), triplets.end());
  return l;
}

namespace {

// Labels each vertex with its component index; returns the component count.
std::size_t label_components(const Graph& g, std::vector<std::size_t>& label) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  label.assign(g.vertex_count(), unseen);
  std::size_t count = 0;
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != unseen) continue;
    label[s] = count;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (label[w] == unseen) {
          label[w] = count;
          queue.push_back(w);
        }
      }
    }
    ++count;
  }
  return count;
}

DegreeProfile profile_of(const Graph& g, bool with_loops) {
  DegreeProfile p;
  p.min_degree = static_cast<std::size_t>(-1);
  std::size_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t d = with_loops ? g.full_degree(v) : g.degree(v);
    p.min_degree = std::min(p.min_degree, d);
    p.max_degree = std::max(p.max_degree, d);
    total += d;
  }
  p.average_degree = static_cast<double>(total) / static_cast<double>(g.vertex_count());
  p.is_regular = p.min_degree == p.max_degree;
  return p;
}

}  // namespace

bool is_connected(const Graph& g) { return component_count(g) == 1; }

std::size_t component_count(const Graph& g) {
  std::vector<std::size_t> label;
  return label_components(g, label);
}

bool is_bipartite(const Graph& g) {
  std::vector<int> color(g.vertex_count(), -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  // A loop is an odd cycle of length one.
  return g.dropped_loop_count() == 0;
}

DegreeProfile degree_profile(const Graph& g) { return profile_of(g, true); }
DegreeProfile loopless_degree_profile(const Graph& g) { return profile_of(g, false); }

}  // namespace ramcon
