#include "normgeom/ortho.hpp"

#include "normgeom/parallel.hpp"
#include "normgeom/pattern_search.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace normgeom {

Vector bracket_residuals(const NormedSpace& space, const Vector& y, const std::vector<Vector>& xs) {
  Vector r(static_cast<Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) r[static_cast<Index>(i)] = bracket(space, y, xs[i]);
  return r;
}

namespace {

// y and -y are both solutions; pick the one whose first significant
// coordinate is positive.
Vector canonical_sign(const Vector& y) {
  const double scale = y.cwiseAbs().maxCoeff();
  for (Index i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) > 1e-12 * scale) return y[i] < 0.0 ? Vector(-y) : y;
  }
  return y;
}

OrthoResult make_result(const NormedSpace& space, const Vector& y, const std::vector<Vector>& xs,
                        std::size_t starts_used) {
  OrthoResult r;
  r.y = canonical_sign(y);
  r.residuals = bracket_residuals(space, r.y, xs);
  r.residual_max = r.residuals.size() == 0 ? 0.0 : r.residuals.cwiseAbs().maxCoeff();
  r.starts_used = starts_used;
  return r;
}

std::string residual_message(const char* what, double residual, double tol) {
  return std::string(what) + ": residual " + std::to_string(residual) + " exceeds tolerance " + std::to_string(tol);
}

}  // namespace

OrthoResult orthogonal_2d(const NormedSpace& space, const Vector& x, double tol) {
  if (space.dim() != 2) throw std::invalid_argument("orthogonal_2d: space must be two-dimensional");
  if (!(tol > 0.0)) throw std::invalid_argument("orthogonal_2d: tol must be positive");
  if (std::abs(space.norm(x) - 1.0) > 1e-9) throw std::invalid_argument("orthogonal_2d: x must be a unit vector");

  Vector w(2);
  w << -x[1], x[0];
  const auto point = [&](double theta) {
    return normalize_to_sphere(space, Vector(std::cos(theta) * x + std::sin(theta) * w));
  };
  const auto h = [&](double theta) { return bracket(space, x, point(theta)); };

  double lo = 0.0;
  double hi = std::numbers::pi;
  double h_lo = h(lo);
  const double h_hi = h(hi);
  if (!(h_lo * h_hi < 0.0)) throw std::logic_error("orthogonal_2d: bracket does not change sign along the path");

  double best_theta = lo;
  double best_abs = std::abs(h_lo);
  for (int iter = 0; iter < 200 && best_abs > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double h_mid = h(mid);
    if (std::abs(h_mid) < best_abs) {
      best_abs = std::abs(h_mid);
      best_theta = mid;
    }
    if ((h_mid > 0.0) == (h_lo > 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }

  OrthoResult result = make_result(space, point(best_theta), {x}, 1);
  if (result.residual_max > tol) throw SearchFailure(residual_message("orthogonal_2d", result.residual_max, tol), result);
  return result;
}

namespace {

constexpr std::size_t kStartBatch = 4;

OrthoResult search(const NormedSpace& space, const std::vector<Vector>& xs, const OrthoOptions& options) {
  const Index n = space.dim();
  if (n < 2) throw std::invalid_argument("orthogonal_nd: dimension must be >= 2");
  if (static_cast<Index>(xs.size()) > n - 1) throw std::invalid_argument("orthogonal_nd: at most n-1 vectors");
  if (!(options.tol > 0.0)) throw std::invalid_argument("orthogonal_nd: tol must be positive");
  if (options.starts < 1) throw std::invalid_argument("orthogonal_nd: starts must be >= 1");
  for (const auto& x : xs) {
    if (x.size() != n) throw std::invalid_argument("orthogonal_nd: dimension mismatch");
  }

  const auto objective = [&](const Vector& y) { return bracket_residuals(space, y, xs).squaredNorm(); };
  const auto project = [&](const Vector& y) { return normalize_to_sphere(space, y); };
  const std::vector<Vector> starts = sphere_sample(space, options.starts, options.seed);

  PatternSearchOptions ps;
  ps.max_evaluations = 400'000;

  OrthoResult best;
  best.residual_max = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  while (used < starts.size()) {
    const std::size_t batch = std::min(kStartBatch, starts.size() - used);
    std::vector<OrthoResult> results(batch);
    parallel_for(batch, [&](std::size_t i) {
      const auto found = pattern_search_minimize(objective, project, starts[used + i], ps);
      results[i] = make_result(space, found.point, xs, 0);
    });
    for (auto& r : results) {
      if (r.residual_max < best.residual_max) best = std::move(r);
    }
    used += batch;
    if (best.residual_max <= options.tol) break;
  }
  best.starts_used = used;
  return best;
}

}  // namespace

OrthoResult best_orthogonal_nd(const NormedSpace& space, const std::vector<Vector>& xs, const OrthoOptions& options) {
  return search(space, xs, options);
}

OrthoResult orthogonal_nd(const NormedSpace& space, const std::vector<Vector>& xs, const OrthoOptions& options) {
  OrthoResult best = search(space, xs, options);
  if (best.residual_max > options.tol) {
    throw SearchFailure(residual_message("orthogonal_nd", best.residual_max, options.tol), std::move(best));
  }
  return best;
}

}  // namespace normgeom
