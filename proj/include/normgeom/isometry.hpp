#pragma once

#include "normgeom/space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace normgeom {

/// Sampled operator norms of a map R^k (Euclidean) -> X given by a matrix.
/// The witnesses are Euclidean-unit vectors u with ||M u|| = op_norm and
/// ||M u|| = 1 / inv_op_norm respectively.
struct DistortionEstimate {
  double op_norm = 0.0;
  double inv_op_norm = 0.0;
  double distortion = 0.0;
  Vector op_witness;
  Vector inv_witness;
};

/// Samples `budget` Euclidean-unit directions, then refines the extreme
/// ones by compass search. Throws std::invalid_argument if `matrix` is rank
/// deficient or does not have space.dim() rows.
DistortionEstimate distortion_estimate(const NormedSpace& space, const Matrix& matrix, std::size_t budget,
                                       std::uint64_t seed);

/// Distortion of a 2-column map over the family (x + t y) / sqrt(1 + t^2),
/// t = tan(phi) on a uniform phi-grid (t = inf included), with refinement.
DistortionEstimate testing_family_distortion_2d(const NormedSpace& space, const Matrix& matrix,
                                                std::size_t grid = 10'000);

/// Closed-form bound values at dimension n and defect epsilon.
struct BoundValues {
  int n = 2;
  double epsilon = 0.0;
  double beta_n = 0.0;     // 18 n^2 - 17 n + 14
  double kn_linear = 1.0;  // 1 + beta_n * epsilon
  double linear_2d = 1.0;  // 1 + 15 epsilon, the two-dimensional coefficient
  std::optional<double> bound_2d;  // only n = 2 and 1 - 15e - 13.5e^2 > 0
};

double beta_coefficient(int n);
BoundValues kn_bound(int n, double epsilon);

/// n^{|1/2 - 1/p|}: distortion of the identity l_p^n -> l_2^n.
double lp_identity_distortion(double p, int n);

/// n^{log2(eps + 1) / 2} with eps + 1 the Clarkson constant of l_p.
double proposition_bound(double p, int n);

/// A constructed map R^n -> X (columns are images of the standard basis).
struct LinearMapReport {
  Matrix matrix;
  double op_norm = 1.0;
  double inv_op_norm = 1.0;
  double distortion = 1.0;
  Vector op_witness;
  Vector inv_witness;
  std::vector<double> per_level_delta;
  /// rescaled operator norm and inverse norm (K) of the map entering each level
  std::vector<double> level_op_norm;
  std::vector<double> level_inv_op_norm;
  std::optional<double> epsilon_used;
  std::optional<BoundValues> bounds;
  bool search_failed = false;
};

struct BuildOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t budget = 100'000;
  std::size_t ortho_starts = 20;
  /// Continue with the best residual when an orthogonal search misses tol,
  /// flagging the report instead of throwing SearchFailure.
  bool allow_search_failure = false;
};

/// x = e_1 / ||e_1||, y bracket-orthogonal to x, matrix = [x y].
LinearMapReport build_isometry_2d(const NormedSpace& space, double tol = 1e-10);

/// Inductive construction over the coordinate flag span(e_1) ⊂ span(e_1, e_2)
/// ⊂ ... ⊂ R^n. Throws SearchFailure (unless allowed) and
/// std::runtime_error when the assembled matrix is singular.
LinearMapReport build_isometry_nd(const NormedSpace& space, const BuildOptions& options = {});

}  // namespace normgeom
