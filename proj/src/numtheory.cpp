#include "ramcon/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ramcon/error.hpp"

namespace ramcon::numtheory {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod);
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void require_prime_1_mod_4(std::int64_t x, const char* name, const char* op) {
  if (x < 2 || !is_prime(static_cast<std::uint64_t>(x)))
    throw InvalidArgument(std::string(op) + ": " + name + " = " + std::to_string(x) + " is not prime");
  if (x % 4 != 1)
    throw InvalidArgument(std::string(op) + ": " + name + " = " + std::to_string(x) +
                          " is not congruent to 1 mod 4");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

Residue reduce(Residue a, Residue q) {
  const Residue r = a % q;
  return r < 0 ? r + q : r;
}

Residue inverse_mod(Residue a, Residue q) {
  a = reduce(a, q);
  if (a == 0) throw InvalidArgument("inverse_mod: " + std::to_string(q) + " divides the argument");
  // Fermat; q is prime everywhere this module is used.
  return static_cast<Residue>(pow_mod(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(q - 2),
                                      static_cast<std::uint64_t>(q)));
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InvalidArgument("legendre_symbol: modulus " + std::to_string(p) + " is not an odd prime");
  const auto r = static_cast<std::uint64_t>(reduce(a, p));
  if (r == 0) return 0;
  const std::uint64_t e = pow_mod(r, static_cast<std::uint64_t>((p - 1) / 2), static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

Residue sqrt_minus_one(std::int64_t q) {
  require_prime_1_mod_4(q, "q", "sqrt_minus_one");
  // TODO: switch to Tonelli-Shanks if q ever needs to go past ~1e6.
  for (Residue x = 1; x < q; ++x) {
    if (static_cast<Residue>(mul_mod(static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(x),
                                     static_cast<std::uint64_t>(q))) == q - 1)
      return x;
  }
  throw InvalidArgument("sqrt_minus_one: no root found");  // unreachable for q = 1 mod 4
}

std::vector<QuaternionSolution> jacobi_solutions(std::int64_t p) {
  require_prime_1_mod_4(p, "p", "jacobi_solutions");
  const std::int64_t r = isqrt(p);
  std::vector<QuaternionSolution> out;
  for (std::int64_t a0 = 1; a0 <= r; a0 += 2) {
    const std::int64_t rest0 = p - a0 * a0;
    const std::int64_t lim = r - (r % 2);  // largest even value <= r
    for (std::int64_t a1 = -lim; a1 <= lim; a1 += 2) {
      const std::int64_t rest1 = rest0 - a1 * a1;
      if (rest1 < 0) continue;
      for (std::int64_t a2 = -lim; a2 <= lim; a2 += 2) {
        const std::int64_t rest2 = rest1 - a2 * a2;
        if (rest2 < 0) continue;
        const std::int64_t a3 = isqrt(rest2);
        if (a3 * a3 != rest2 || a3 % 2 != 0) continue;
        out.push_back({a0, a1, a2, a3});
        if (a3 != 0) out.push_back({a0, a1, a2, -a3});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mat2 multiply(const Mat2& x, const Mat2& y, Residue q) {
  return {reduce(x.a * y.a + x.b * y.c, q), reduce(x.a * y.b + x.b * y.d, q),
          reduce(x.c * y.a + x.d * y.c, q), reduce(x.c * y.b + x.d * y.d, q)};
}

Residue determinant(const Mat2& m, Residue q) { return reduce(m.a * m.d - m.b * m.c, q); }

PslElement psl_canonicalize(const Mat2& m, Residue q) {
  const Mat2 r{reduce(m.a, q), reduce(m.b, q), reduce(m.c, q), reduce(m.d, q)};
  if (determinant(r, q) == 0) throw InvalidArgument("psl_canonicalize: singular matrix");
  const Residue s = inverse_mod(r.c != 0 ? r.c : r.d, q);
  return {reduce(r.a * s, q), reduce(r.b * s, q), reduce(r.c * s, q), reduce(r.d * s, q)};
}

std::vector<PslElement> psl_group_elements(Residue q) {
  if (q < 3 || !is_prime(static_cast<std::uint64_t>(q)))
    throw InvalidArgument("psl_group_elements: q = " + std::to_string(q) + " is not an odd prime");
  std::vector<char> residue(static_cast<std::size_t>(q), 0);
  for (Residue x = 1; x < q; ++x) residue[static_cast<std::size_t>(reduce(x * x, q))] = 1;

  std::vector<PslElement> out;
  out.reserve(static_cast<std::size_t>(q * (q * q - 1) / 2));
  for (Residue a = 0; a < q; ++a) {
    for (Residue b = 0; b < q; ++b) {
      // Second row (0, 1): determinant a.
      if (residue[static_cast<std::size_t>(a)]) out.push_back({a, b, 0, 1});
      // Second row (1, d): determinant a d - b.
      for (Residue d = 0; d < q; ++d)
        if (residue[static_cast<std::size_t>(reduce(a * d - b, q))]) out.push_back({a, b, 1, d});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Residue lft_apply(const Mat2& m, Residue x, Residue q) {
  const Residue inf = projective_infinity(q);
  const Residue a = reduce(m.a, q), b = reduce(m.b, q), c = reduce(m.c, q), d = reduce(m.d, q);
  if (x == inf) return c == 0 ? inf : reduce(a * inverse_mod(c, q), q);
  const Residue num = reduce(a * x + b, q);
  const Residue den = reduce(c * x + d, q);
  if (den == 0) return inf;  // num != 0 since m is nonsingular
  return reduce(num * inverse_mod(den, q), q);
}

void check_lps_parameters(std::int64_t p, std::int64_t q) {
  require_prime_1_mod_4(p, "p", "LPS parameters");
  require_prime_1_mod_4(q, "q", "LPS parameters");
  if (p == q) throw InvalidArgument("LPS parameters: p and q must be distinct");
  if (legendre_symbol(p, q) != 1)
    throw InvalidArgument("LPS parameters: Legendre symbol (" + std::to_string(p) + "/" + std::to_string(q) +
                          ") = -1, only the non-bipartite (p/q) = 1 case is supported");
}

std::vector<std::int64_t> admissible_lps_q(std::int64_t p, std::int64_t q_min, std::int64_t q_max) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = std::max<std::int64_t>(q_min, 5); q <= q_max; ++q) {
    if (q == p || q % 4 != 1 || !is_prime(static_cast<std::uint64_t>(q))) continue;
    if (legendre_symbol(p, q) == 1) out.push_back(q);
  }
  return out;
}

Mat2 lps_generator(const QuaternionSolution& s, Residue i, Residue q) {
  return {reduce(s.a0 + i * s.a1, q), reduce(s.a2 + i * s.a3, q), reduce(-s.a2 + i * s.a3, q),
          reduce(s.a0 - i * s.a1, q)};
}

std::vector<Mat2> lps_generators(std::int64_t p, std::int64_t q) {
  check_lps_parameters(p, q);
  const Residue i = sqrt_minus_one(q);
  std::vector<Mat2> out;
  for (const auto& s : jacobi_solutions(p)) out.push_back(lps_generator(s, i, q));
  return out;
}

}  // namespace ramcon::numtheory
