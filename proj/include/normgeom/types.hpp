#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>

namespace normgeom {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// p = infinity is stored as IEEE infinity and always evaluated as a max of
/// absolute coordinates.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// True when the smallest singular value exceeds rel_tol times the largest.
bool has_full_column_rank(const Matrix& m, double rel_tol = 1e-10);

/// Relative comparison with an absolute floor of 1e-14.
inline bool nearly_equal(double a, double b, double rel_tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel_tol * scale + 1e-14;
}

}  // namespace normgeom
