#pragma once

#include "normgeom/space.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace normgeom {

/// A unit vector y together with its brackets against a family x_1..x_k.
/// residual_max is the largest |[y, x_i]|.
struct OrthoResult {
  Vector y;
  Vector residuals;
  double residual_max = 0.0;
  std::size_t starts_used = 0;
};

/// Raised when no start reaches the residual tolerance. A zero always exists
/// (odd maps from S^{n-1} to R^{n-1} vanish somewhere), so this means the
/// search effort was insufficient.
class SearchFailure : public std::runtime_error {
 public:
  SearchFailure(const std::string& what, OrthoResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const OrthoResult& best() const { return best_; }

 private:
  OrthoResult best_;
};

/// (bracket(y, x_1), ..., bracket(y, x_k)); an odd function of y.
Vector bracket_residuals(const NormedSpace& space, const Vector& y, const std::vector<Vector>& xs);

/// Bisection along the unit-sphere path from x to -x. Requires a 2-D space
/// and ||x|| = 1 +- 1e-9.
OrthoResult orthogonal_2d(const NormedSpace& space, const Vector& x, double tol = 1e-10);

struct OrthoOptions {
  double tol = 1e-8;
  std::size_t starts = 20;
  std::uint64_t seed = 0;
};

/// Minimizes sum_i [y, x_i]^2 over the unit sphere by multi-start compass
/// search. Returns the minimum-residual result; throws SearchFailure when it
/// exceeds tol.
OrthoResult orthogonal_nd(const NormedSpace& space, const std::vector<Vector>& xs,
                          const OrthoOptions& options = {});

/// Same search, never throws; the caller inspects residual_max.
OrthoResult best_orthogonal_nd(const NormedSpace& space, const std::vector<Vector>& xs,
                               const OrthoOptions& options = {});

}  // namespace normgeom
