#pragma once

#include "normgeom/types.hpp"

#include <cstddef>
#include <functional>

namespace normgeom {

struct PatternSearchOptions {
  double initial_step = 0.1;
  double shrink = 0.5;
  double min_step = 1e-9;
  std::size_t max_evaluations = 2'000'000;
};

struct PatternSearchResult {
  Vector point;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

using Objective = std::function<double(const Vector&)>;
using Projection = std::function<Vector(const Vector&)>;

/// Compass search: polls +-step along each coordinate direction, moves to the
/// first improving point, and shrinks the step when no direction improves.
/// Every trial point is passed through `project` before evaluation, which is
/// how the search is confined to a sphere. Stops once step < min_step.
PatternSearchResult pattern_search_maximize(const Objective& objective, const Projection& project,
                                            const Vector& start, const PatternSearchOptions& options = {});

PatternSearchResult pattern_search_minimize(const Objective& objective, const Projection& project,
                                            const Vector& start, const PatternSearchOptions& options = {});

/// Projection onto the Euclidean unit sphere.
Vector euclidean_normalize(const Vector& x);

}  // namespace normgeom
