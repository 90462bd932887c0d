#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ramcon/graph.hpp"

namespace ramcon {

enum class Family { RRL, WS1, ER, LPS1, LPS2, R3L };

std::string_view to_string(Family f);
/// Accepts the lower-case CLI names: rrl, ws1, er, lps1, lps2, r3l.
Family parse_family(std::string_view name);

struct GeneratorParams {
  Family family = Family::RRL;
  std::size_t n = 0;  ///< vertex count (RRL, WS1, ER, R3L)
  std::size_t k = 0;  ///< degree, or average degree for ER
  double pw = 0.0;    ///< WS1 rewiring probability
  std::int64_t p = 0; ///< LPS primes
  std::int64_t q = 0;
  std::optional<std::uint64_t> swaps;  ///< R3L; defaults to 10 * (nk/2)
  std::uint64_t seed = 0;

  bool operator==(const GeneratorParams&) const = default;
};

/// Largest LPS-I group order gen_lps1 will build by default.
inline constexpr std::size_t kLps1VertexBudget = 20000;

/// Throws InvalidArgument naming the violated condition.
void validate(const GeneratorParams& params);

/// (N, k) the parameters will produce; k counts LPS multiplicity and loops.
std::pair<std::size_t, std::size_t> nominal_size(const GeneratorParams& params);

struct GeneratorStats {
  std::uint64_t rejected_draws = 0;   ///< WS1 redraws / R3L rejected swaps
  std::uint64_t kept_edges = 0;       ///< WS1 edges with no valid rewiring target
  std::uint64_t extra_swap_batches = 0;  ///< R3L connectivity retries
};

/// Ring lattice: vertex i adjacent to i +- j (mod n), j = 1..k/2.
Graph gen_rrl(std::size_t n, std::size_t k);

/// Watts-Strogatz-I. Lattice rings are processed j = 1..k/2 in turn, and
/// within a ring vertices in index order; each forward edge (i, i+j) keeps i
/// and with probability pw moves its far end to a uniform vertex that is
/// neither i, the old end, nor a current neighbor of i.
Graph gen_ws1(std::size_t n, std::size_t k, double pw, std::uint64_t seed, GeneratorStats* stats = nullptr);

/// nk/2 distinct edges drawn uniformly without replacement (Floyd's
/// algorithm over pair indices). Connectivity is not guaranteed.
Graph gen_er(std::size_t n, std::size_t k, std::uint64_t seed);

/// Cayley graph on PSL(2, Z/qZ) with the p+1 LPS generators. Multigraph.
Graph gen_lps1(std::int64_t p, std::int64_t q, std::size_t vertex_budget = kLps1VertexBudget);

/// LPS generators acting on P^1(F_q) by linear fractional maps; infinity is
/// vertex q. Loops are dropped (and recorded), multiplicities kept.
Graph gen_lps2(std::int64_t p, std::int64_t q);

/// Random regular graph by degree-preserving double-edge swaps starting from
/// gen_rrl(n, k). Rejected swaps do not count. If the result is
/// disconnected, up to 10 further batches of `swaps` swaps are applied before
/// giving up with InvalidArgument.
Graph gen_r3l(std::size_t n, std::size_t k, std::uint64_t swaps, std::uint64_t seed,
              GeneratorStats* stats = nullptr);

inline std::uint64_t default_r3l_swaps(std::size_t n, std::size_t k) { return 10 * (n * k / 2); }

Graph generate(const GeneratorParams& params, GeneratorStats* stats = nullptr);

}  // namespace ramcon
