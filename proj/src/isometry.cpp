#include "normgeom/isometry.hpp"

#include "normgeom/ortho.hpp"
#include "normgeom/pattern_search.hpp"
#include "normgeom/vnj.hpp"
#include "sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace normgeom {

namespace {

void check_map(const NormedSpace& space, const Matrix& matrix) {
  if (matrix.rows() != space.dim()) throw std::invalid_argument("distortion: matrix rows differ from space dimension");
  if (matrix.cols() < 1) throw std::invalid_argument("distortion: matrix has no columns");
  if (!has_full_column_rank(matrix)) throw std::invalid_argument("distortion: matrix is rank deficient");
}

DistortionEstimate finish(double max_value, Vector max_u, double min_value, Vector min_u) {
  DistortionEstimate d;
  d.op_norm = max_value;
  d.inv_op_norm = 1.0 / min_value;
  d.distortion = d.op_norm * d.inv_op_norm;
  d.op_witness = std::move(max_u);
  d.inv_witness = std::move(min_u);
  return d;
}

}  // namespace

DistortionEstimate distortion_estimate(const NormedSpace& space, const Matrix& matrix, std::size_t budget,
                                       std::uint64_t seed) {
  check_map(space, matrix);
  if (budget < 1) throw std::invalid_argument("distortion: budget must be >= 1");
  const Index k = matrix.cols();
  const auto image_norm = [&](const Vector& u) { return space.norm(matrix * u); };

  const auto sampled = detail::sample_extremes(
      budget, seed, [k](Rng& rng) { return euclidean_normalize(rng.normal_vector(k)); }, image_norm);

  const auto hi = pattern_search_maximize(image_norm, euclidean_normalize, sampled.max_point);
  const auto lo = pattern_search_minimize(image_norm, euclidean_normalize, sampled.min_point);
  return finish(hi.value, hi.point, lo.value, lo.point);
}

DistortionEstimate testing_family_distortion_2d(const NormedSpace& space, const Matrix& matrix, std::size_t grid) {
  check_map(space, matrix);
  if (matrix.cols() != 2) throw std::invalid_argument("testing family: map must have two columns");
  if (grid < 1) throw std::invalid_argument("testing family: empty grid");

  // u(phi) = (1, t) / sqrt(1 + t^2) with t = tan(phi); phi = pi/2 is t = inf.
  const auto direction = [](double phi) {
    Vector u(2);
    u << std::cos(phi), std::sin(phi);
    return u;
  };
  const auto value = [&](const Vector& phi) { return space.norm(matrix * direction(phi[0])); };

  Vector phi(1);
  double max_phi = std::numbers::pi / 2;
  double min_phi = max_phi;
  phi[0] = max_phi;
  double max_v = value(phi);
  double min_v = max_v;
  for (std::size_t j = 0; j < grid; ++j) {
    phi[0] = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
    const double v = value(phi);
    if (v > max_v) {
      max_v = v;
      max_phi = phi[0];
    }
    if (v < min_v) {
      min_v = v;
      min_phi = phi[0];
    }
  }

  PatternSearchOptions ps;
  ps.initial_step = std::numbers::pi / static_cast<double>(grid);
  ps.min_step = 1e-12;
  const auto identity = [](const Vector& x) { return x; };
  const auto hi = pattern_search_maximize(value, identity, Vector::Constant(1, max_phi), ps);
  const auto lo = pattern_search_minimize(value, identity, Vector::Constant(1, min_phi), ps);
  return finish(hi.value, direction(hi.point[0]), lo.value, direction(lo.point[0]));
}

double beta_coefficient(int n) { return 18.0 * n * n - 17.0 * n + 14.0; }

BoundValues kn_bound(int n, double epsilon) {
  if (n < 2) throw std::invalid_argument("kn_bound: n must be >= 2");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("kn_bound: epsilon must be >= 0");
  BoundValues b;
  b.n = n;
  b.epsilon = epsilon;
  b.beta_n = beta_coefficient(n);
  b.kn_linear = 1.0 + b.beta_n * epsilon;
  b.linear_2d = 1.0 + 15.0 * epsilon;
  if (n == 2) {
    const double c = 15.0 * epsilon + 13.5 * epsilon * epsilon;
    if (1.0 - c > 0.0) b.bound_2d = std::sqrt((1.0 + c) / (1.0 - c));
  }
  return b;
}

double lp_identity_distortion(double p, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_identity_distortion: p must be >= 1");
  if (n < 1) throw std::invalid_argument("lp_identity_distortion: n must be >= 1");
  const double exponent = std::isinf(p) ? 0.5 : std::abs(0.5 - 1.0 / p);
  return std::pow(static_cast<double>(n), exponent);
}

double proposition_bound(double p, int n) {
  if (n < 2) throw std::invalid_argument("proposition_bound: n must be >= 2");
  const double epsilon = clarkson_vnj(p) - 1.0;
  return std::pow(static_cast<double>(n), std::log2(epsilon + 1.0) / 2.0);
}

namespace {

LinearMapReport report_from(Matrix matrix, const DistortionEstimate& d) {
  LinearMapReport r;
  r.matrix = std::move(matrix);
  r.op_norm = d.op_norm;
  r.inv_op_norm = d.inv_op_norm;
  r.distortion = d.distortion;
  r.op_witness = d.op_witness;
  r.inv_witness = d.inv_witness;
  return r;
}

OrthoResult run_ortho(const NormedSpace& space, const std::vector<Vector>& xs, const OrthoOptions& options,
                      bool allow_failure, bool& failed) {
  try {
    return orthogonal_nd(space, xs, options);
  } catch (const SearchFailure& e) {
    if (!allow_failure) throw;
    failed = true;
    return e.best();
  }
}

}  // namespace

LinearMapReport build_isometry_2d(const NormedSpace& space, double tol) {
  if (space.dim() != 2) throw std::invalid_argument("build_isometry_2d: space must be two-dimensional");
  const Vector x = normalize_to_sphere(space, Vector::Unit(2, 0));
  const OrthoResult ortho = orthogonal_2d(space, x, tol);

  Matrix m(2, 2);
  m.col(0) = x;
  m.col(1) = ortho.y;
  LinearMapReport r = report_from(m, testing_family_distortion_2d(space, m));
  r.per_level_delta.push_back(ortho.residual_max);
  return r;
}

LinearMapReport build_isometry_nd(const NormedSpace& space, const BuildOptions& options) {
  const Index n = space.dim();
  if (n == 1) {
    Matrix m(1, 1);
    m(0, 0) = 1.0 / space.norm(Vector::Ones(1));
    DistortionEstimate d;
    d.op_norm = d.inv_op_norm = d.distortion = 1.0;
    d.op_witness = d.inv_witness = Vector::Ones(1);
    return report_from(m, d);
  }

  const auto parent = space.clone();
  bool failed = false;

  Matrix images;
  std::vector<double> deltas;
  {
    const Subspace plane(parent, Matrix::Identity(n, 2));
    LinearMapReport base;
    try {
      base = build_isometry_2d(plane, std::min(options.tol, 1e-10));
    } catch (const SearchFailure& e) {
      if (!options.allow_search_failure) throw;
      failed = true;
      Matrix m(2, 2);
      m.col(0) = normalize_to_sphere(plane, Vector::Unit(2, 0));
      m.col(1) = e.best().y;
      base = report_from(m, testing_family_distortion_2d(plane, m));
      base.per_level_delta = {e.best().residual_max};
    }
    if (n == 2) {
      base.search_failed = failed;
      return base;
    }
    images = plane.basis() * base.matrix;
    deltas = base.per_level_delta;
  }

  LinearMapReport report;
  for (Index k = 3; k <= n; ++k) {
    const auto level_seed = options.seed + static_cast<std::uint64_t>(k);
    const DistortionEstimate measured = distortion_estimate(space, images, options.budget, level_seed);
    const double scale = measured.op_norm * (1.0 + 1e-9);
    images /= scale;
    report.level_op_norm.push_back(measured.op_norm / scale);
    report.level_inv_op_norm.push_back(measured.inv_op_norm * scale);

    // x_k is sought inside span(e_1..e_k), which contains the current images.
    const Subspace level(parent, Matrix::Identity(n, k));
    std::vector<Vector> xs;
    for (Index c = 0; c < images.cols(); ++c) xs.emplace_back(images.col(c).head(k));
    const OrthoOptions ortho_options{options.tol, options.ortho_starts, options.seed * 1000 + static_cast<std::uint64_t>(k)};
    const OrthoResult ortho = run_ortho(level, xs, ortho_options, options.allow_search_failure, failed);
    deltas.push_back(ortho.residual_max);

    Matrix next(n, k);
    next.leftCols(k - 1) = images;
    next.col(k - 1) = level.embed(ortho.y);
    if (!has_full_column_rank(next)) {
      throw std::runtime_error("build_isometry_nd: level " + std::to_string(k) +
                               " produced a vector inside the previous subspace");
    }
    images = std::move(next);
  }

  const DistortionEstimate final_d = distortion_estimate(space, images, options.budget, options.seed);
  LinearMapReport out = report_from(images, final_d);
  out.per_level_delta = std::move(deltas);
  out.level_op_norm = std::move(report.level_op_norm);
  out.level_inv_op_norm = std::move(report.level_inv_op_norm);
  out.search_failed = failed;
  return out;
}

}  // namespace normgeom
