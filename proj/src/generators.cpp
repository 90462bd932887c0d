#include "ramcon/generators.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ramcon/error.hpp"
#include "ramcon/numtheory.hpp"
#include "ramcon/rng.hpp"

namespace ramcon {

namespace nt = numtheory;

std::string_view to_string(Family f) {
  switch (f) {
    case Family::RRL: return "rrl";
    case Family::WS1: return "ws1";
    case Family::ER: return "er";
    case Family::LPS1: return "lps1";
    case Family::LPS2: return "lps2";
    case Family::R3L: return "r3l";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::RRL, Family::WS1, Family::ER, Family::LPS1, Family::LPS2, Family::R3L})
    if (to_string(f) == name) return f;
  throw InvalidArgument("unknown graph family \"" + std::string(name) + "\"");
}

namespace {

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void check_lattice(std::size_t n, std::size_t k, const char* who) {
  const std::string w(who);
  if (k % 2 != 0) throw InvalidArgument(w + ": k = " + std::to_string(k) + " must be even");
  if (k < 2) throw InvalidArgument(w + ": k must be at least 2");
  if (k >= n) throw InvalidArgument(w + ": k = " + std::to_string(k) + " must be below n = " + std::to_string(n));
}

void check_er(std::size_t n, std::size_t k) {
  if (n < 2) throw InvalidArgument("er: n must be at least 2");
  if ((n * k) % 2 != 0) throw InvalidArgument("er: n*k must be even");
  if (k > n - 1) throw InvalidArgument("er: edge budget nk/2 exceeds the complete graph n(n-1)/2");
}

std::size_t lps1_order(std::int64_t q) { return static_cast<std::size_t>(q * (q * q - 1) / 2); }

// Undirected multigraph from a symmetric arc relation: each edge is seen
// once from either end, so only arcs with from < to are kept; fixed points
// come in generator/inverse pairs and become one dropped loop.
class ArcCollector {
 public:
  explicit ArcCollector(std::size_t n) : n_(n), loop_arcs_(n, 0) {}
  void add(Vertex from, Vertex to) {
    if (from == to)
      ++loop_arcs_[from];
    else if (from < to)
      edges_.push_back({from, to});
  }
  Graph build() && {
    std::vector<std::uint32_t> loops(n_);
    for (std::size_t v = 0; v < n_; ++v) loops[v] = loop_arcs_[v] / 2;
    return Graph(n_, std::move(edges_), true, std::move(loops));
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> loop_arcs_;
  std::vector<Edge> edges_;
};

// Mutable simple graph with O(1) edge lookup, for the randomized builders.
class WorkingGraph {
 public:
  explicit WorkingGraph(const Graph& seed) : nbrs_(seed.vertex_count()) {
    for (const Edge& e : seed.edges()) add(e.u, e.v);
  }
  std::size_t n() const { return nbrs_.size(); }
  bool has(Vertex u, Vertex v) const { return keys_.contains(pair_key(u, v)); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return nbrs_[v]; }
  void add(Vertex u, Vertex v) {
    keys_.insert(pair_key(u, v));
    nbrs_[u].push_back(v);
    nbrs_[v].push_back(u);
  }
  void remove(Vertex u, Vertex v) {
    keys_.erase(pair_key(u, v));
    erase_one(nbrs_[u], v);
    erase_one(nbrs_[v], u);
  }
  Graph to_graph() const {
    std::vector<Edge> edges;
    edges.reserve(keys_.size());
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : nbrs_[u])
        if (u < v) edges.push_back({u, v});
    return Graph(n(), std::move(edges), false);
  }

 private:
  static void erase_one(std::vector<Vertex>& list, Vertex x) {
    auto it = std::find(list.begin(), list.end(), x);
    *it = list.back();
    list.pop_back();
  }
  std::vector<std::vector<Vertex>> nbrs_;
  std::unordered_set<std::uint64_t> keys_;
};

}  // namespace

void validate(const GeneratorParams& params) {
  switch (params.family) {
    case Family::RRL:
    case Family::R3L:
      check_lattice(params.n, params.k, params.family == Family::RRL ? "rrl" : "r3l");
      break;
    case Family::WS1:
      check_lattice(params.n, params.k, "ws1");
      if (!(params.pw >= 0.0 && params.pw <= 1.0)) throw InvalidArgument("ws1: pw must lie in [0, 1]");
      break;
    case Family::ER:
      check_er(params.n, params.k);
      break;
    case Family::LPS1:
      nt::check_lps_parameters(params.p, params.q);
      if (lps1_order(params.q) > kLps1VertexBudget)
        throw InvalidArgument("lps1: q(q^2-1)/2 = " + std::to_string(lps1_order(params.q)) +
                              " vertices exceeds the build budget");
      break;
    case Family::LPS2:
      nt::check_lps_parameters(params.p, params.q);
      break;
  }
}

std::pair<std::size_t, std::size_t> nominal_size(const GeneratorParams& params) {
  switch (params.family) {
    case Family::LPS1: return {lps1_order(params.q), static_cast<std::size_t>(params.p + 1)};
    case Family::LPS2: return {static_cast<std::size_t>(params.q + 1), static_cast<std::size_t>(params.p + 1)};
    default: return {params.n, params.k};
  }
}

Graph gen_rrl(std::size_t n, std::size_t k) {
  check_lattice(n, k, "rrl");
  std::vector<Edge> edges;
  edges.reserve(n * k / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= k / 2; ++j)
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + j) % n)});
  return Graph(n, std::move(edges), false);
}

Graph gen_ws1(std::size_t n, std::size_t k, double pw, std::uint64_t seed, GeneratorStats* stats) {
  GeneratorParams params;
  params.family = Family::WS1;
  params.n = n;
  params.k = k;
  params.pw = pw;
  validate(params);
  WorkingGraph g(gen_rrl(n, k));
  Rng rng(seed);
  GeneratorStats local;
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(pw)) continue;
      const auto u = static_cast<Vertex>(i);
      const auto old = static_cast<Vertex>((i + j) % n);
      // Targets exclude u, the old end, and every current neighbor of u
      // (old is one of them).
      if (g.neighbors(u).size() + 1 >= n) {
        ++local.kept_edges;
        continue;
      }
      g.remove(u, old);
      Vertex t;
      while (true) {
        t = static_cast<Vertex>(rng.uniform_below(n));
        if (t != u && t != old && !g.has(u, t)) break;
        ++local.rejected_draws;
      }
      g.add(u, t);
    }
  }
  if (stats) *stats = local;
  return g.to_graph();
}

Graph gen_er(std::size_t n, std::size_t k, std::uint64_t seed) {
  check_er(n, k);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t want = static_cast<std::uint64_t>(n) * k / 2;
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(want * 2);
  for (std::uint64_t j = total - want; j < total; ++j) {
    const std::uint64_t t = rng.uniform_below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());

  // Pair index order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
  std::vector<Edge> edges;
  edges.reserve(picks.size());
  std::uint64_t row_start = 0;
  Vertex u = 0;
  for (std::uint64_t idx : picks) {
    while (idx >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    edges.push_back({u, static_cast<Vertex>(u + 1 + (idx - row_start))});
  }
  return Graph(n, std::move(edges), false);
}

Graph gen_lps1(std::int64_t p, std::int64_t q, std::size_t vertex_budget) {
  nt::check_lps_parameters(p, q);
  if (lps1_order(q) > vertex_budget)
    throw InvalidArgument("lps1: q(q^2-1)/2 = " + std::to_string(lps1_order(q)) + " vertices exceeds budget " +
                          std::to_string(vertex_budget));
  const auto elements = nt::psl_group_elements(q);
  const auto generators = nt::lps_generators(p, q);
  auto key = [q](const nt::PslElement& e) { return ((e.a * q + e.b) * q + e.c) * q + e.d; };
  std::unordered_map<std::int64_t, Vertex> index;
  index.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(key(elements[i]), static_cast<Vertex>(i));

  ArcCollector arcs(elements.size());
  for (std::size_t u = 0; u < elements.size(); ++u) {
    for (const nt::Mat2& s : generators) {
      const nt::PslElement v = nt::psl_canonicalize(nt::multiply(s, elements[u].matrix(), q), q);
      arcs.add(static_cast<Vertex>(u), index.at(key(v)));
    }
  }
  return std::move(arcs).build();
}

Graph gen_lps2(std::int64_t p, std::int64_t q) {
  nt::check_lps_parameters(p, q);
  const auto generators = nt::lps_generators(p, q);
  const auto n = static_cast<std::size_t>(q + 1);
  ArcCollector arcs(n);
  for (nt::Residue x = 0; x <= q; ++x)
    for (const nt::Mat2& s : generators)
      arcs.add(static_cast<Vertex>(x), static_cast<Vertex>(nt::lft_apply(s, x, q)));
  return std::move(arcs).build();
}

Graph gen_r3l(std::size_t n, std::size_t k, std::uint64_t swaps, std::uint64_t seed, GeneratorStats* stats) {
  check_lattice(n, k, "r3l");
  WorkingGraph g(gen_rrl(n, k));
  if (swaps == 0) return g.to_graph();
  if (k + 1 >= n) throw InvalidArgument("r3l: complete graph admits no edge swap");

  Rng rng(seed);
  GeneratorStats local;
  const std::uint64_t reject_budget = 1000 * swaps + 1'000'000;

  auto run_batch = [&](std::uint64_t count) {
    std::uint64_t rejected = 0;
    for (std::uint64_t done = 0; done < count;) {
      const auto v1 = static_cast<Vertex>(rng.uniform_below(n));
      const auto& n1 = g.neighbors(v1);
      const Vertex v2 = n1[rng.uniform_below(n1.size())];
      Vertex v3;
      do {
        v3 = static_cast<Vertex>(rng.uniform_below(n));
      } while (v3 == v1 || g.has(v1, v3));
      const auto& n3 = g.neighbors(v3);
      const Vertex v4 = n3[rng.uniform_below(n3.size())];
      // New edges are v1-v3 (absent by choice of v3) and v2-v4.
      if (v4 == v2 || g.has(v2, v4)) {
        if (++rejected > reject_budget) throw InvalidArgument("r3l: no admissible swap found");
        continue;
      }
      g.remove(v1, v2);
      g.remove(v3, v4);
      g.add(v1, v3);
      g.add(v2, v4);
      assert(g.neighbors(v1).size() == k && g.neighbors(v2).size() == k && g.neighbors(v3).size() == k &&
             g.neighbors(v4).size() == k);
      ++done;
    }
    local.rejected_draws += rejected;
  };

  run_batch(swaps);
  Graph out = g.to_graph();
  while (!is_connected(out)) {
    if (local.extra_swap_batches == 10)
      throw InvalidArgument("r3l: graph still disconnected after 10 extra swap batches");
    ++local.extra_swap_batches;
    run_batch(swaps);
    out = g.to_graph();
  }
  if (stats) *stats = local;
  return out;
}

Graph generate(const GeneratorParams& params, GeneratorStats* stats) {
  validate(params);
  switch (params.family) {
    case Family::RRL: return gen_rrl(params.n, params.k);
    case Family::WS1: return gen_ws1(params.n, params.k, params.pw, params.seed, stats);
    case Family::ER: return gen_er(params.n, params.k, params.seed);
    case Family::LPS1: return gen_lps1(params.p, params.q);
    case Family::LPS2: return gen_lps2(params.p, params.q);
    case Family::R3L:
      return gen_r3l(params.n, params.k, params.swaps.value_or(default_r3l_swaps(params.n, params.k)), params.seed,
                     stats);
  }
  throw InvalidArgument("unknown family");
}

}  // namespace ramcon
