#pragma once

#include "normgeom/space.hpp"

#include <cstdint>

namespace normgeom {

/// Sampled lower bound on the von Neumann-Jordan constant M.
struct VnjEstimate {
  double m_lower = 1.0;
  Vector witness_a;
  Vector witness_b;
  double epsilon = 0.0;  // m_lower - 1
  std::size_t samples_used = 0;
  std::size_t refinement_steps = 0;
};

/// Sampled lower bound on the James constant.
struct JamesEstimate {
  double j_lower = 0.0;
  Vector witness_x;
  Vector witness_y;
  std::size_t samples_used = 0;
  std::size_t refinement_steps = 0;
};

/// (||a+b||^2 + ||a-b||^2) / (2(||a||^2 + ||b||^2)). Throws
/// std::invalid_argument when a and b are both zero.
double parallelogram_ratio(const NormedSpace& space, const Vector& a, const Vector& b);

/// max(ratio, 1/ratio) for the pair, the quantity bounded by M.
double parallelogram_defect(const NormedSpace& space, const Vector& a, const Vector& b);

/// Samples `budget` pairs uniformly on the Euclidean unit sphere of R^{2n},
/// then refines the best pair by compass search. Deterministic in
/// (space, budget, seed) and independent of the worker thread count.
VnjEstimate estimate_vnj(const NormedSpace& space, std::size_t budget, std::uint64_t seed);

/// Clarkson's value 2^{|2-p|/p} for l_p^n, n >= 2; 2 for p = inf.
double clarkson_vnj(double p);

/// Maximizes min(||x+y||, ||x-y||) over pairs of unit vectors.
JamesEstimate estimate_james(const NormedSpace& space, std::size_t budget, std::uint64_t seed);

}  // namespace normgeom
