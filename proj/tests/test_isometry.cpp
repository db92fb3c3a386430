#include "normgeom/random.hpp"
#include "normgeom/isometry.hpp"

#include "normgeom/vnj.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace normgeom;

TEST_CASE("identity distortion on coordinate spaces") {
  const Space l1(2, NormSpec::pnorm(1));
  const DistortionEstimate d = distortion_estimate(l1, Matrix::Identity(2, 2), 10'000, 0);
  CHECK(d.op_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(d.inv_op_norm == doctest::Approx(1).epsilon(1e-6));

  const Space linf(3, NormSpec::pnorm(kInfinity));
  const DistortionEstimate e = distortion_estimate(linf, Matrix::Identity(3, 3), 10'000, 0);
  CHECK(e.op_norm == doctest::Approx(1).epsilon(1e-6));
  CHECK(e.inv_op_norm == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));

  const Space l2(4, NormSpec::pnorm(2));
  const DistortionEstimate f = distortion_estimate(l2, Matrix::Identity(4, 4), 100, 3);
  CHECK(f.op_norm == doctest::Approx(1).epsilon(1e-12));
  CHECK(f.inv_op_norm == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("distortion estimate agrees with a dense circle grid") {
  Matrix m(2, 2);
  m << 1, 0.3, -0.2, 0.8;
  {
    const Space s(2, NormSpec::blend(NormSpec::pnorm(3), NormSpec::pnorm(1.5), 0.3));
    const auto grid = oracle::circle_range([&](const Vector& u) { return s.norm(m * u); }, 200'000);
    const DistortionEstimate d = distortion_estimate(s, m, 10'000, 1);
    CHECK(d.op_norm == doctest::Approx(grid.max).epsilon(1e-9));
    CHECK(1 / d.inv_op_norm == doctest::Approx(grid.min).epsilon(1e-9));
    CHECK(d.distortion == doctest::Approx(d.op_norm * d.inv_op_norm));
    const DistortionEstimate t = testing_family_distortion_2d(s, m);
    CHECK(t.distortion == doctest::Approx(grid.max / grid.min).epsilon(1e-9));
  }
  {
    // polyhedral: the grid is only first-order accurate at the kinks, and
    // can never beat the true extremes
    const Space s(2, NormSpec::hexagon());
    const auto grid = oracle::circle_range([&](const Vector& u) { return s.norm(m * u); }, 200'000);
    const DistortionEstimate d = distortion_estimate(s, m, 10'000, 1);
    CHECK(d.op_norm >= grid.max - 1e-12);
    CHECK(d.op_norm == doctest::Approx(grid.max).epsilon(1e-5));
    CHECK(1 / d.inv_op_norm <= grid.min + 1e-12);
    CHECK(1 / d.inv_op_norm == doctest::Approx(grid.min).epsilon(1e-5));
    const DistortionEstimate t = testing_family_distortion_2d(s, m);
    CHECK(t.distortion >= grid.max / grid.min - 1e-12);
    CHECK(t.distortion == doctest::Approx(grid.max / grid.min).epsilon(1e-5));
  }
}

TEST_CASE("distortion preconditions") {
  const Space l2(2, NormSpec::pnorm(2));
  Matrix singular(2, 2);
  singular << 1, 2, 2, 4;
  CHECK_THROWS_AS(distortion_estimate(l2, singular, 100, 0), std::invalid_argument);
  CHECK_THROWS_AS(distortion_estimate(l2, Matrix::Identity(3, 3), 100, 0), std::invalid_argument);
  CHECK_THROWS_AS(distortion_estimate(l2, Matrix::Identity(2, 2), 0, 0), std::invalid_argument);
}

TEST_CASE("bound formulas") {
  CHECK(beta_coefficient(2) == 52);
  CHECK(beta_coefficient(3) == 125);
  const BoundValues b = kn_bound(2, 0.01);
  REQUIRE(b.bound_2d.has_value());
  CHECK(*b.bound_2d == doctest::Approx(std::sqrt(1.15135 / 0.84865)).epsilon(1e-12));
  CHECK(*b.bound_2d == doctest::Approx(1.1648).epsilon(1e-4));
  CHECK(b.linear_2d == doctest::Approx(1.15));
  const BoundValues zero = kn_bound(2, 0);
  CHECK(*zero.bound_2d == 1);
  CHECK(zero.kn_linear == 1);
  CHECK(!kn_bound(2, 0.1).bound_2d.has_value());  // 15e + 13.5e^2 >= 1
  CHECK(!kn_bound(3, 0.01).bound_2d.has_value());
  CHECK(kn_bound(3, 0.01).kn_linear == doctest::Approx(2.25));
  CHECK_THROWS_AS(kn_bound(1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(kn_bound(2, -0.1), std::invalid_argument);

  CHECK(lp_identity_distortion(2, 7) == 1);
  CHECK(lp_identity_distortion(1, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lp_identity_distortion(kInfinity, 4) == doctest::Approx(2));
  CHECK(proposition_bound(1, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(proposition_bound(2, 5) == 1);
  CHECK(proposition_bound(4, 16) == doctest::Approx(2).epsilon(1e-14));
}

TEST_CASE("planar construction") {
  const LinearMapReport e = build_isometry_2d(Space(2, NormSpec::pnorm(2)));
  CHECK(std::abs(e.distortion - 1) <= 1e-9);

  const Space l1(2, NormSpec::pnorm(1));
  const LinearMapReport r = build_isometry_2d(l1, 1e-10);
  // x = e1, y = +-e2: sup |x + t y|_1 / sqrt(1 + t^2) over a t grid
  double hi = 0, lo = INFINITY;
  for (int i = -200'000; i <= 200'000; ++i) {
    const double t = i * 1e-4;
    const double v = (1 + std::abs(t)) / std::sqrt(1 + t * t);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  CHECK(r.distortion == doctest::Approx(hi / lo).epsilon(1e-6));
  CHECK(r.distortion == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r.per_level_delta.size() == 1);
  CHECK(r.per_level_delta[0] <= 1e-10);
}

TEST_CASE("planar construction on blends obeys the planar bound") {
  for (double t : {0.01, 0.05}) {
    const Space s(2, NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(4), t));
    const double eps = estimate_vnj(s, 20'000, 0).epsilon;
    const LinearMapReport r = build_isometry_2d(s);
    CHECK(r.distortion <= *kn_bound(2, eps).bound_2d);
  }
}

TEST_CASE("recursive construction") {
  for (Index n = 2; n <= 5; ++n) {
    const LinearMapReport r = build_isometry_nd(Space(n, NormSpec::pnorm(2)));
    CHECK(std::abs(r.distortion - 1) <= 1e-6);
    CHECK(r.per_level_delta.size() == static_cast<std::size_t>(n - 1));
    for (double d : r.per_level_delta) CHECK(d <= 1e-8);
    CHECK(!r.search_failed);
  }

  // On l1^3 the only bracket-orthogonal unit vectors to e1, e2 are +-e3, so the
  // map is diag(1/sqrt2, 1/sqrt2, 1) up to sign: sup sqrt2, inf 1/sqrt2.
  const LinearMapReport l1 = build_isometry_nd(Space(3, NormSpec::pnorm(1)));
  CHECK(l1.distortion == doctest::Approx(2).epsilon(1e-6));
  CHECK(l1.distortion <= kn_bound(3, 1.0).kn_linear);

  const Space s(3, NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(4), 0.05));
  const double eps = estimate_vnj(s, 20'000, 0).epsilon;
  const LinearMapReport b = build_isometry_nd(s);
  CHECK(b.distortion <= kn_bound(3, eps).kn_linear);
  CHECK(b.level_op_norm.size() == 1);
  CHECK(b.level_op_norm[0] <= 1.0);
}

TEST_CASE("one-dimensional spaces get the scaling map") {
  const LinearMapReport r = build_isometry_nd(Space(1, NormSpec::weighted_pnorm(3, Vector::Constant(1, 2.5))));
  CHECK(r.distortion == 1);
  CHECK(r.matrix(0, 0) == doctest::Approx(1 / std::cbrt(2.5)));
}
