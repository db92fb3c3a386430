#pragma once

#include "normgeom/types.hpp"

#include <cstdint>
#include <random>

namespace normgeom {

/// Seeded generator with distribution code written out explicitly, so the
/// stream of doubles is identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream number `stream` derived from `seed`.
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vector normal_vector(Index n);
  Vector uniform_vector(Index n, double lo, double hi);
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace normgeom
