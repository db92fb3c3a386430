#include "normgeom/vnj.hpp"

#include "normgeom/pattern_search.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normgeom {

double parallelogram_ratio(const NormedSpace& space, const Vector& a, const Vector& b) {
  const double na = space.norm(a);
  const double nb = space.norm(b);
  const double denom = 2.0 * (na * na + nb * nb);
  if (denom == 0.0) throw std::invalid_argument("parallelogram ratio: both vectors are zero");
  const double plus = space.norm(a + b);
  const double minus = space.norm(a - b);
  return (plus * plus + minus * minus) / denom;
}

double parallelogram_defect(const NormedSpace& space, const Vector& a, const Vector& b) {
  const double r = parallelogram_ratio(space, a, b);
  return std::max(r, 1.0 / r);
}

namespace {

constexpr std::size_t kVnjRestarts = 8;

// Pair objective on z = (a, b) in R^{2n}.
double pair_defect(const NormedSpace& space, const Vector& z) {
  const Index n = space.dim();
  if (z.squaredNorm() == 0.0) return -std::numeric_limits<double>::infinity();
  return parallelogram_defect(space, z.head(n), z.tail(n));
}

Vector split_normalize(const NormedSpace& space, const Vector& z) {
  const Index n = space.dim();
  Vector out(2 * n);
  out.head(n) = normalize_to_sphere(space, z.head(n));
  out.tail(n) = normalize_to_sphere(space, z.tail(n));
  return out;
}

double james_objective(const NormedSpace& space, const Vector& z) {
  const Index n = space.dim();
  const Vector x = z.head(n);
  const Vector y = z.tail(n);
  if (x.squaredNorm() == 0.0 || y.squaredNorm() == 0.0) return -std::numeric_limits<double>::infinity();
  return std::min(space.norm(x + y), space.norm(x - y));
}

}  // namespace

VnjEstimate estimate_vnj(const NormedSpace& space, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("estimate_vnj: budget must be >= 1");
  const Index n = space.dim();
  const auto objective = [&](const Vector& z) { return pair_defect(space, z); };

  // Compass search can stall on a kink of a polyhedral norm, so several of
  // the best samples are refined and the largest result kept.
  const auto top = detail::sample_top(
      budget, kVnjRestarts, seed, [n](Rng& rng) { return euclidean_normalize(rng.normal_vector(2 * n)); },
      objective);

  Vector z = top.front().second;
  double best_value = top.front().first;
  std::size_t steps = 0;
  for (const auto& [value, start] : top) {
    const auto refined = pattern_search_maximize(objective, euclidean_normalize, start);
    steps += refined.iterations;
    if (refined.value > best_value) {
      best_value = refined.value;
      z = refined.point;
    }
  }

  VnjEstimate out;
  out.witness_a = z.head(n);
  out.witness_b = z.tail(n);
  out.m_lower = parallelogram_defect(space, out.witness_a, out.witness_b);
  out.epsilon = out.m_lower - 1.0;
  out.samples_used = budget;
  out.refinement_steps = steps;
  return out;
}

double clarkson_vnj(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("clarkson_vnj: p must be >= 1");
  if (std::isinf(p)) return 2.0;
  return std::exp2(std::abs(2.0 - p) / p);
}

JamesEstimate estimate_james(const NormedSpace& space, std::size_t budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("estimate_james: budget must be >= 1");
  const Index n = space.dim();
  const auto objective = [&](const Vector& z) { return james_objective(space, z); };
  const auto project = [&](const Vector& z) { return split_normalize(space, z); };

  const auto best = detail::sample_extremes(
      budget, seed, [&](Rng& rng) { return split_normalize(space, rng.normal_vector(2 * n)); }, objective);

  const auto refined = pattern_search_maximize(objective, project, best.max_point);

  JamesEstimate out;
  const Vector& z = best.max_value >= refined.value ? best.max_point : refined.point;
  out.witness_x = z.head(n);
  out.witness_y = z.tail(n);
  out.j_lower = james_objective(space, z);
  out.samples_used = budget;
  out.refinement_steps = refined.iterations;
  return out;
}

}  // namespace normgeom
