#include "normgeom/random.hpp"
#include "normgeom/space.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace normgeom;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("p-norm values") {
  CHECK(norm_eval(Space(2, NormSpec::pnorm(1)), vec({3, -4})) == doctest::Approx(7).epsilon(1e-15));
  CHECK(norm_eval(Space(2, NormSpec::pnorm(2)), vec({3, 4})) == doctest::Approx(5).epsilon(1e-15));
  CHECK(norm_eval(Space(3, NormSpec::pnorm(kInfinity)), vec({1, -7, 2})) == 7);
  // general p against the raw sum
  const Vector x = vec({0.3, -1.2, 2.5});
  const double raw = std::pow(std::pow(0.3, 3) + std::pow(1.2, 3) + std::pow(2.5, 3), 1.0 / 3);
  CHECK(norm_eval(Space(3, NormSpec::pnorm(3)), x) == doctest::Approx(raw).epsilon(1e-14));
  // large entries do not overflow
  CHECK(norm_eval(Space(2, NormSpec::pnorm(3)), vec({1e200, 1e200})) == doctest::Approx(1e200 * std::cbrt(2.0)));
}

TEST_CASE("weighted p-norm and polytope gauge") {
  const Space w(2, NormSpec::weighted_pnorm(1, vec({2, 3})));
  CHECK(w.norm(vec({1, -1})) == doctest::Approx(5));

  Matrix f(3, 2);
  f << 1, 0, 0, 1, 1, 1;
  const Space poly(2, NormSpec::polytope(f));
  CHECK(poly.norm(vec({1, 1})) == doctest::Approx(2));
  CHECK(poly.norm(vec({-1, -1})) == doctest::Approx(2));

  const Space hex(2, NormSpec::hexagon());
  for (int k = 0; k < 6; ++k) {
    // vertices of the unit ball sit at 30 + 60k degrees, distance 2/sqrt(3)
    const double a = std::numbers::pi / 6 + k * std::numbers::pi / 3;
    CHECK(hex.norm(vec({std::cos(a), std::sin(a)}) * (2 / std::sqrt(3.0))) == doctest::Approx(1).epsilon(1e-14));
  }
}

TEST_CASE("blend is the convex combination") {
  const Space b(2, NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(4), 0.25));
  const Vector x = vec({1, 2});
  CHECK(b.norm(x) == doctest::Approx(0.75 * std::sqrt(5.0) + 0.25 * std::pow(17.0, 0.25)).epsilon(1e-15));
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(NormSpec::pnorm(0.5), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::weighted_pnorm(2, vec({1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(1), 1.5), std::invalid_argument);
  Matrix degenerate(2, 2);
  degenerate << 1, 0, 2, 0;  // not a norm: vanishes on e2
  CHECK_THROWS_AS(Space(2, NormSpec::polytope(degenerate)), std::invalid_argument);
  CHECK_THROWS_AS(Space(0, NormSpec::pnorm(2)), std::invalid_argument);
  CHECK_THROWS_AS(Space(3, NormSpec::weighted_pnorm(2, vec({1, 2}))), std::invalid_argument);
  const Space s(2, NormSpec::pnorm(2));
  CHECK_THROWS_AS(s.norm(vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("bracket examples") {
  const Space l1(2, NormSpec::pnorm(1));
  const Space l2(2, NormSpec::pnorm(2));
  CHECK(bracket(l2, vec({1, 0}), vec({0, 1})) == doctest::Approx(0).epsilon(1e-15));
  CHECK(bracket(l1, vec({1, 0}), vec({1, 1})) == doctest::Approx(8));
  const Vector x = vec({0.4, -1.3});
  CHECK(bracket(l1, x, x) == doctest::Approx(4 * std::pow(l1.norm(x), 2)));
}

TEST_CASE("bracket on l2 is four times the dot product") {
  const Space l2(5, NormSpec::pnorm(2));
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vector a = rng.normal_vector(5);
    const Vector b = rng.normal_vector(5);
    CHECK(bracket(l2, a, b) == doctest::Approx(4 * a.dot(b)).epsilon(1e-10).scale(a.norm() * b.norm()));
  }
}

TEST_CASE("sphere sampling") {
  const Space l2(3, NormSpec::pnorm(2));
  const auto pts = sphere_sample(l2, 10, 1);
  REQUIRE(pts.size() == 10);
  for (const auto& p : pts) CHECK(std::abs(p.norm() - 1) <= 1e-12);

  const Space l1(2, NormSpec::pnorm(1));
  const auto one = sphere_sample(l1, 1, 42);
  CHECK(std::abs(one[0].cwiseAbs().sum() - 1) <= 1e-12);

  const auto again = sphere_sample(l2, 10, 1);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i] == again[i]);
  CHECK(normalize_to_sphere(l2, Vector::Zero(3)) == Vector::Zero(3));
}

TEST_CASE("subspace restriction") {
  const Space l2(3, NormSpec::pnorm(2));
  const Subspace plane = subspace_restrict(l2, Matrix::Identity(3, 2));
  CHECK(plane.dim() == 2);
  CHECK(plane.norm(vec({3, 4})) == doctest::Approx(5));

  const Space l1(3, NormSpec::pnorm(1));
  CHECK(subspace_restrict(l1, Matrix::Identity(3, 2)).norm(vec({1, 1})) == doctest::Approx(2));

  Matrix dup(3, 2);
  dup << 1, 1, 0, 0, 0, 0;
  CHECK_THROWS_AS(subspace_restrict(l2, dup), std::invalid_argument);
  CHECK_THROWS_AS(subspace_restrict(l2, Matrix::Identity(2, 2)), std::invalid_argument);

  // a subspace outlives the space it was cut from
  Subspace* kept = nullptr;
  {
    const Space tmp(3, NormSpec::pnorm(1));
    kept = new Subspace(subspace_restrict(tmp, Matrix::Identity(3, 1)));
  }
  CHECK(kept->norm(vec({-2})) == doctest::Approx(2));
  delete kept;
}

TEST_CASE("Euclidean direct sum") {
  const Space l2(2, NormSpec::pnorm(2));
  const DirectSumSpace sum = direct_sum(l2);
  CHECK(sum.dim() == 3);
  CHECK(sum.norm(vec({1, 0, 1})) == doctest::Approx(std::sqrt(2.0)));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vector z = rng.normal_vector(3);
    CHECK(sum.norm(z) == doctest::Approx(z.norm()).epsilon(1e-14));
  }
  const Space l1(1, NormSpec::pnorm(1));
  CHECK(direct_sum(l1).norm(vec({3, 4})) == doctest::Approx(5));
  CHECK(direct_sum(l1).norm(vec({0, -2})) == doctest::Approx(2));
}

TEST_CASE("rng is deterministic per stream") {
  Rng a = Rng::for_stream(5, 2);
  Rng b = Rng::for_stream(5, 2);
  Rng c = Rng::for_stream(5, 3);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
}
