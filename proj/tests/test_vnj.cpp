#include "normgeom/random.hpp"
#include "normgeom/vnj.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace normgeom;

TEST_CASE("parallelogram ratio") {
  const Space l1(2, NormSpec::pnorm(1));
  const Vector e1 = Vector::Unit(2, 0);
  const Vector e2 = Vector::Unit(2, 1);
  CHECK(parallelogram_ratio(l1, e1, e2) == doctest::Approx(2));
  CHECK(parallelogram_ratio(l1, e1, Vector::Zero(2)) == 1.0);
  CHECK_THROWS_AS(parallelogram_ratio(l1, Vector::Zero(2), Vector::Zero(2)), std::invalid_argument);

  const Space l2(4, NormSpec::pnorm(2));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(parallelogram_ratio(l2, rng.normal_vector(4), rng.normal_vector(4)) - 1) <= 1e-12);
  }
  // defect folds ratios below one
  const Space linf(2, NormSpec::pnorm(kInfinity));
  CHECK(parallelogram_ratio(linf, e1, e2) == doctest::Approx(0.5));
  CHECK(parallelogram_defect(linf, e1, e2) == doctest::Approx(2));
}

TEST_CASE("Clarkson values") {
  CHECK(clarkson_vnj(1) == 2);
  CHECK(clarkson_vnj(2) == 1);
  CHECK(clarkson_vnj(4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clarkson_vnj(4.0 / 3.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(clarkson_vnj(kInfinity) == 2);
  CHECK_THROWS_AS(clarkson_vnj(0.9), std::invalid_argument);
}

TEST_CASE("estimate_vnj examples") {
  const auto m = [](double p, Index n, std::uint64_t seed) {
    return estimate_vnj(Space(n, NormSpec::pnorm(p)), 10'000, seed).m_lower;
  };
  CHECK(std::abs(m(2, 3, 0) - 1) <= 1e-9);
  CHECK(std::abs(m(1, 2, 7) - 2) <= 1e-3);
  CHECK(std::abs(m(4, 2, 7) - std::sqrt(2.0)) <= 1e-3);
  CHECK(std::abs(m(1.5, 2, 7) - std::cbrt(2.0)) <= 1e-3);
}

TEST_CASE("estimate_vnj is a lower bound with a consistent witness") {
  const Space s(2, NormSpec::blend(NormSpec::pnorm(2), NormSpec::pnorm(1), 0.3));
  const VnjEstimate e = estimate_vnj(s, 5000, 4);
  CHECK(e.m_lower >= 1.0);
  CHECK(e.epsilon == doctest::Approx(e.m_lower - 1).epsilon(1e-15));
  CHECK(parallelogram_defect(s, e.witness_a, e.witness_b) == e.m_lower);
  CHECK(e.samples_used == 5000);
  // every one of the sampled pairs is below the estimate
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    CHECK(parallelogram_defect(s, rng.normal_vector(2), rng.normal_vector(2)) <= e.m_lower + 1e-12);
  }
}

TEST_CASE("budget monotonicity") {
  const Space s(2, NormSpec::pnorm(3));
  double prev = 0;
  for (std::size_t budget : {100, 1000, 10'000}) {
    const double m = estimate_vnj(s, budget, 5).m_lower;
    CHECK(m >= prev - 1e-12);
    prev = m;
  }
}

TEST_CASE("James constant") {
  const Space l2(2, NormSpec::pnorm(2));
  const double grid = oracle::james_grid(l2, 720);
  CHECK(grid == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(std::abs(estimate_james(l2, 10'000, 0).j_lower - std::sqrt(2.0)) <= 1e-3);
  CHECK(std::abs(estimate_james(Space(2, NormSpec::pnorm(1)), 10'000, 3).j_lower - 2) <= 1e-3);
  CHECK(std::abs(estimate_james(Space(2, NormSpec::pnorm(kInfinity)), 10'000, 3).j_lower - 2) <= 1e-3);

  const Space hex(2, NormSpec::hexagon());
  const double hex_grid = oracle::james_grid(hex, 720);
  const JamesEstimate j = estimate_james(hex, 10'000, 1);
  CHECK(j.j_lower >= hex_grid - 1e-3);
  CHECK(std::abs(hex.norm(j.witness_x) - 1) <= 1e-9);
  CHECK(std::abs(hex.norm(j.witness_y) - 1) <= 1e-9);
}

TEST_CASE("invalid budgets") {
  const Space l2(2, NormSpec::pnorm(2));
  CHECK_THROWS_AS(estimate_vnj(l2, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_james(l2, 0, 0), std::invalid_argument);
}
