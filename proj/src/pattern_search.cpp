#include "normgeom/pattern_search.hpp"

#include <cmath>
#include <stdexcept>

namespace normgeom {

PatternSearchResult pattern_search_maximize(const Objective& objective, const Projection& project,
                                            const Vector& start, const PatternSearchOptions& options) {
  if (!(options.initial_step > 0.0) || !(options.shrink > 0.0 && options.shrink < 1.0)) {
    throw std::invalid_argument("pattern search: bad step protocol");
  }
  PatternSearchResult result;
  result.point = project(start);
  result.value = objective(result.point);
  result.evaluations = 1;

  double step = options.initial_step;
  const Index n = result.point.size();
  while (step >= options.min_step && result.evaluations < options.max_evaluations) {
    bool moved = false;
    for (Index i = 0; i < n && !moved; ++i) {
      for (const double sign : {1.0, -1.0}) {
        Vector trial = result.point;
        trial[i] += sign * step;
        trial = project(trial);
        const double value = objective(trial);
        ++result.evaluations;
        if (value > result.value) {
          result.point = std::move(trial);
          result.value = value;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= options.shrink;
    ++result.iterations;
  }
  return result;
}

PatternSearchResult pattern_search_minimize(const Objective& objective, const Projection& project,
                                            const Vector& start, const PatternSearchOptions& options) {
  auto result = pattern_search_maximize([&](const Vector& x) { return -objective(x); }, project, start, options);
  result.value = -result.value;
  return result;
}

Vector euclidean_normalize(const Vector& x) {
  const double len = x.norm();
  if (len == 0.0) return x;
  return x / len;
}

}  // namespace normgeom
