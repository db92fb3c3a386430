#pragma once

// Block-seeded sampling shared by the estimators. Sample i always comes from
// stream i / kBlockSize of the seed, so results do not depend on how blocks
// are scheduled, and a smaller budget sees a prefix of a larger one.

#include "normgeom/parallel.hpp"
#include "normgeom/random.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace normgeom::detail {

inline constexpr std::size_t kBlockSize = 1024;

struct Extremes {
  double max_value = -std::numeric_limits<double>::infinity();
  Vector max_point;
  double min_value = std::numeric_limits<double>::infinity();
  Vector min_point;
};

template <class Gen, class F>
Extremes sample_extremes(std::size_t count, std::uint64_t seed, const Gen& gen, const F& f) {
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<Extremes> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng = Rng::for_stream(seed, b);
    const std::size_t end = std::min(count, (b + 1) * kBlockSize);
    Extremes& e = partial[b];
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      Vector x = gen(rng);
      const double v = f(x);
      if (v > e.max_value) {
        e.max_value = v;
        e.max_point = x;
      }
      if (v < e.min_value) {
        e.min_value = v;
        e.min_point = std::move(x);
      }
    }
  });
  Extremes out;
  for (auto& e : partial) {
    if (e.max_value > out.max_value) {
      out.max_value = e.max_value;
      out.max_point = std::move(e.max_point);
    }
    if (e.min_value < out.min_value) {
      out.min_value = e.min_value;
      out.min_point = std::move(e.min_point);
    }
  }
  return out;
}

// The `keep` largest values of f over the same sample sequence, best first.
// Ties keep the lower sample index.
template <class Gen, class F>
std::vector<std::pair<double, Vector>> sample_top(std::size_t count, std::size_t keep, std::uint64_t seed,
                                                  const Gen& gen, const F& f) {
  using Entry = std::pair<double, Vector>;
  const auto insert = [keep](std::vector<Entry>& top, double v, const Vector& x) {
    if (top.size() == keep && !(v > top.back().first)) return;
    auto at = std::upper_bound(top.begin(), top.end(), v, [](double value, const Entry& e) { return value > e.first; });
    top.insert(at, Entry{v, x});
    if (top.size() > keep) top.pop_back();
  };
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<Entry>> partial(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng = Rng::for_stream(seed, b);
    const std::size_t end = std::min(count, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      const Vector x = gen(rng);
      insert(partial[b], f(x), x);
    }
  });
  std::vector<Entry> out;
  for (const auto& block : partial) {
    for (const auto& [v, x] : block) insert(out, v, x);
  }
  return out;
}

}  // namespace normgeom::detail
