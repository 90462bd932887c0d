#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace ramcon::numtheory {

// Exact residue arithmetic for the LPS constructions. Everything here is
// integer-only; residues are kept in [0, q).

using Residue = std::int64_t;

/// Deterministic for every 64-bit n (Miller-Rabin with the first twelve
/// prime bases).
bool is_prime(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
Residue reduce(Residue a, Residue q);
/// Inverse of a modulo prime q. Throws InvalidArgument when q | a.
Residue inverse_mod(Residue a, Residue q);

/// Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion.
/// Throws InvalidArgument unless p is an odd prime.
int legendre_symbol(std::int64_t a, std::int64_t p);

/// Smaller square root of -1 modulo a prime q = 1 (mod 4), by exhaustive
/// search. Throws InvalidArgument otherwise.
Residue sqrt_minus_one(std::int64_t q);

/// a0^2 + a1^2 + a2^2 + a3^2 = p with a0 odd positive and a1..a3 even.
struct QuaternionSolution {
  std::int64_t a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  auto operator<=>(const QuaternionSolution&) const = default;
};

/// The p+1 distinguished four-square solutions, lexicographically sorted.
/// Throws InvalidArgument unless p is a prime = 1 (mod 4).
std::vector<QuaternionSolution> jacobi_solutions(std::int64_t p);

/// 2x2 matrix over Z/qZ, row-major: [[a, b], [c, d]].
struct Mat2 {
  Residue a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const Mat2&) const = default;
};

Mat2 multiply(const Mat2& x, const Mat2& y, Residue q);
Residue determinant(const Mat2& m, Residue q);

/// Canonical representative of a projective class: second row is (0, 1) or
/// (1, x). Comparison is lexicographic on (a, b, c, d).
struct PslElement {
  Residue a = 0, b = 0, c = 0, d = 1;
  auto operator<=>(const PslElement&) const = default;
  Mat2 matrix() const { return {a, b, c, d}; }
};

/// Scales m by c^-1 when c != 0, else by d^-1. Throws InvalidArgument on a
/// singular matrix.
PslElement psl_canonicalize(const Mat2& m, Residue q);

/// Every canonical matrix whose determinant is a nonzero quadratic residue
/// mod q, sorted. There are q(q^2-1)/2 of them.
std::vector<PslElement> psl_group_elements(Residue q);

/// Points of the projective line P^1(F_q) are 0..q-1, with q standing for
/// infinity.
inline Residue projective_infinity(Residue q) { return q; }

/// x -> (ax + b)/(cx + d) on P^1(F_q) with z/0 = inf for z != 0 and
/// inf -> a/c. Requires m nonsingular mod q.
Residue lft_apply(const Mat2& m, Residue x, Residue q);

/// Throws InvalidArgument naming the failed condition unless p, q are
/// distinct primes, both = 1 (mod 4), with (p/q) = 1.
void check_lps_parameters(std::int64_t p, std::int64_t q);

/// Every q in [q_min, q_max] that check_lps_parameters accepts with p, ascending.
std::vector<std::int64_t> admissible_lps_q(std::int64_t p, std::int64_t q_min, std::int64_t q_max);

/// Generator matrix for one four-square solution with i^2 = -1 (mod q):
/// [[a0 + i a1, a2 + i a3], [-a2 + i a3, a0 - i a1]].
Mat2 lps_generator(const QuaternionSolution& s, Residue i, Residue q);

/// The p+1 LPS generators in jacobi_solutions order.
std::vector<Mat2> lps_generators(std::int64_t p, std::int64_t q);

}  // namespace ramcon::numtheory
