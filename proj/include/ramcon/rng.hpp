#pragma once

#include <cstdint>
#include <random>

namespace ramcon {

/// Seedable 64-bit generator used by every randomized routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library distributions are not portable across
/// implementations, so the derived draws below are defined here:
///
///   uniform_below(n)  rejection sampling on the top of the 64-bit range
///   uniform01()       top 53 bits scaled to [0, 1)
///   normal()          Box-Muller, cosine branch, two engine draws per call
///
/// Independent streams are derived from a master seed with split(), a
/// splitmix64 finalizer over (master, stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t split(std::uint64_t master, std::uint64_t stream);
  static std::uint64_t split(std::uint64_t master, std::uint64_t stream, std::uint64_t substream) {
    return split(split(master, stream), substream);
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);
  double uniform01();
  double normal();
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ramcon
