#include "normgeom/random.hpp"
#include "normgeom/ortho.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace normgeom;

TEST_CASE("planar orthogonal vector, Euclidean") {
  const Space l2(2, NormSpec::pnorm(2));
  const OrthoResult r = orthogonal_2d(l2, Vector::Unit(2, 0), 1e-10);
  CHECK(r.residual_max <= 1e-10);
  CHECK(std::abs(r.y[0]) <= 1e-10);
  CHECK(std::abs(std::abs(r.y[1]) - 1) <= 1e-10);
}

TEST_CASE("planar orthogonal vector on l1 matches a bisection oracle") {
  const Space l1(2, NormSpec::pnorm(1));
  const Vector x = Vector::Unit(2, 0);
  // unit l1 vectors (a, 1 - |a|); the bracket with x is odd in a
  const auto h = [&](double a) {
    Vector y(2);
    y << a, 1 - std::abs(a);
    return bracket(l1, x, y);
  };
  const double a = oracle::bisect(h, -0.9, 0.7);
  CHECK(std::abs(a) <= 1e-12);

  const OrthoResult r = orthogonal_2d(l1, x, 1e-10);
  CHECK(std::abs(r.y[0]) <= 1e-9);
  CHECK(std::abs(std::abs(r.y[1]) - 1) <= 1e-9);
}

TEST_CASE("planar postcondition on assorted spaces") {
  Matrix f(4, 2);
  f << 1, 0, 0, 1, 1, 1, 1, -2;
  const std::vector<Space> spaces{Space(2, NormSpec::hexagon()), Space(2, NormSpec::pnorm(3.5)),
                                  Space(2, NormSpec::polytope(f)),
                                  Space(2, NormSpec::blend(NormSpec::pnorm(1), NormSpec::pnorm(kInfinity), 0.4))};
  Rng rng(17);
  for (const auto& s : spaces) {
    for (int i = 0; i < 5; ++i) {
      const Vector x = normalize_to_sphere(s, rng.normal_vector(2));
      const OrthoResult r = orthogonal_2d(s, x, 1e-10);
      CHECK(std::abs(bracket(s, x, r.y)) <= 1e-10);
      CHECK(std::abs(s.norm(r.y) - 1) <= 1e-12);
    }
  }
}

TEST_CASE("planar preconditions") {
  const Space l2(2, NormSpec::pnorm(2));
  CHECK_THROWS_AS(orthogonal_2d(l2, Vector::Constant(2, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(orthogonal_2d(Space(3, NormSpec::pnorm(2)), Vector::Unit(3, 0)), std::invalid_argument);
}

TEST_CASE("n-dimensional search, Euclidean") {
  const Space l2(3, NormSpec::pnorm(2));
  const OrthoResult r = orthogonal_nd(l2, {Vector::Unit(3, 0), Vector::Unit(3, 1)}, {1e-8, 20, 0});
  CHECK(r.residual_max <= 1e-8);
  CHECK(std::abs(std::abs(r.y[2]) - 1) <= 1e-4);
  CHECK(r.y[2] > 0);  // canonical sign
}

TEST_CASE("n-dimensional search on l1") {
  const Space l1(3, NormSpec::pnorm(1));
  const OrthoResult r = orthogonal_nd(l1, {Vector::Unit(3, 0)}, {1e-8, 20, 2});
  CHECK(std::abs(bracket(l1, r.y, Vector::Unit(3, 0))) <= 1e-8);
  CHECK(std::abs(l1.norm(r.y) - 1) <= 1e-12);
}

TEST_CASE("n-dimensional search on a blend") {
  const Space s(3, NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(4), 0.1));
  const auto xs = sphere_sample(s, 2, 8);
  const OrthoResult r = orthogonal_nd(s, xs, {1e-6, 50, 1});
  CHECK(r.residual_max <= 1e-6);
  CHECK(r.residuals.size() == 2);
  CHECK(r.starts_used >= 1);
}

TEST_CASE("failure carries the best candidate") {
  const Space s(3, NormSpec::pnorm(3));
  const auto xs = sphere_sample(s, 2, 4);
  try {
    orthogonal_nd(s, xs, {1e-300, 2, 0});
    FAIL("expected a search failure");
  } catch (const SearchFailure& e) {
    CHECK(e.best().y.size() == 3);
    CHECK(e.best().residual_max > 0);
  }
  const OrthoResult best = best_orthogonal_nd(s, xs, {1e-300, 2, 0});
  CHECK(best.starts_used == 2);
}

TEST_CASE("n-dimensional preconditions") {
  const Space l2(3, NormSpec::pnorm(2));
  const std::vector<Vector> three{Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)};
  CHECK_THROWS_AS(orthogonal_nd(l2, three, {}), std::invalid_argument);
  CHECK_THROWS_AS(orthogonal_nd(l2, {Vector::Unit(2, 0)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(orthogonal_nd(l2, {Vector::Unit(3, 0)}, {1e-8, 0, 0}), std::invalid_argument);
}
