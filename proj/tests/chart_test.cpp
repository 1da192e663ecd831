#include "hquot/chart.hpp"
#include "hquot/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hquot;

namespace {

constexpr double kPi = std::numbers::pi;

ChartPoint make2(double x, double y) {
  Vector v(1);
  v[0] = x;
  return {v, y};
}

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(), std::abs(a.y - b.y));
}

ChartPoint random_point(SplitMix64& rng, int n) {
  Vector x(n - 1);
  for (int i = 0; i < n - 1; ++i) x[i] = rng.uniform(-2.0, 2.0);
  return {std::move(x), std::exp(rng.uniform(-1.4, 1.4))};
}

Matrix random_compact(SplitMix64& rng, const SoAlgebra& alg) {
  Matrix k = Matrix::Identity(alg.matrix_size(), alg.matrix_size());
  for (int i = 1; i <= alg.rank(); ++i) {
    for (int j = i + 1; j <= alg.rank(); ++j) {
      k = k * alg.exp_rotation(i, j, rng.uniform(-kPi, kPi));
    }
  }
  return k;
}

}  // namespace

TEST_CASE("phi sends the origin to the identity and the axis to boosts") {
  const SoAlgebra alg(2);
  CHECK((phi(alg, ChartPoint::origin(2)) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((phi(alg, make2(0.0, 3.0)) - alg.exp_boost(std::log(3.0))).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(phi(alg, make2(0.0, -1.0)), std::invalid_argument);
}

TEST_CASE("chart inverse formula and involution") {
  CHECK(dist(chart_inverse(ChartPoint::origin(2)), ChartPoint::origin(2)) == 0.0);
  const ChartPoint inv = chart_inverse(make2(2.0, 4.0));
  CHECK(inv.x[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(inv.y == doctest::Approx(0.25).epsilon(1e-15));

  // tau is the same map under its geometric name, with period 2.
  SplitMix64 rng(5);
  for (int c = 0; c < 1000; ++c) {
    const ChartPoint p = random_point(rng, 3);
    CHECK(dist(tau(p), chart_inverse(p)) == 0.0);
    CHECK(dist(tau(tau(p)), p) <= 1e-15 * std::max(1.0, p.y));
  }

  const SoAlgebra alg(2);
  SplitMix64 rng2(6);
  for (int c = 0; c < 100; ++c) {
    const ChartPoint p = random_point(rng2, 2);
    CHECK((phi(alg, chart_inverse(p)) - alg.group_inverse(phi(alg, p))).cwiseAbs().maxCoeff() <=
          1e-12);
  }
}

TEST_CASE("tau swaps the axis height") {
  const ChartPoint img = tau(make2(0.0, 5.0));
  CHECK(img.x[0] == 0.0);
  CHECK(img.y == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(dist(tau(ChartPoint::origin(2)), ChartPoint::origin(2)) == 0.0);
}

TEST_CASE("boost conjugation scales the nilpotent coordinate") {
  SplitMix64 rng(9);
  for (int n : {2, 4}) {
    const SoAlgebra alg(n);
    for (int c = 0; c < 50; ++c) {
      const ChartPoint p = random_point(rng, n);
      const double y = std::exp(rng.uniform(-1.0, 1.0));
      ChartPoint boost{Vector::Zero(n - 1), y};
      ChartPoint flat{p.x, 1.0};
      ChartPoint scaled{y * p.x, 1.0};
      const Matrix lhs =
          phi(alg, boost) * phi(alg, flat) * alg.group_inverse(phi(alg, boost));
      CHECK((lhs - phi(alg, scaled)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("r action closed form for n = 2") {
  const SoAlgebra alg(2);

  SUBCASE("identity and fixed point") {
    const Matrix k0 = rotation_z(alg, 0.0);
    CHECK(dist(r_action(alg, k0, make2(0.7, 1.3)), make2(0.7, 1.3)) <= 1e-14);
    for (double z : {0.3, 1.2, -2.5}) {
      CHECK(dist(r_action(alg, rotation_z(alg, z), ChartPoint::origin(2)),
                 ChartPoint::origin(2)) <= 1e-14);
      CHECK(dist(l_action(alg, rotation_z(alg, z), ChartPoint::origin(2)),
                 ChartPoint::origin(2)) <= 1e-14);
    }
  }

  SUBCASE("axis orbit parametrization") {
    // r(z)(0, y) = (-sinh(ln y) sin z, sinh(ln y) cos z + cosh(ln y)).
    const double y = 2.4, z = 0.9;
    const ChartPoint img = r_action(alg, rotation_z(alg, z), make2(0.0, y));
    const double s = std::sinh(std::log(y)), c = std::cosh(std::log(y));
    CHECK(img.x[0] == doctest::Approx(-s * std::sin(z)).epsilon(1e-12));
    CHECK(img.y == doctest::Approx(s * std::cos(z) + c).epsilon(1e-12));
  }

  SUBCASE("generic points match the Moebius-type formulas") {
    SplitMix64 rng(13);
    for (int c = 0; c < 500; ++c) {
      const ChartPoint p = random_point(rng, 2);
      const double z = rng.uniform(-kPi, kPi);
      const Matrix kz = rotation_z(alg, z);
      CHECK(dist(r_action(alg, kz, p), r_action_closed_2d(z, p)) <= 1e-10);
      CHECK(dist(l_action(alg, kz, p), l_action_closed_2d(z, p)) <= 1e-10);
    }
  }
}

TEST_CASE("tau is weakly equivariant between the two actions") {
  SplitMix64 rng(17);
  for (int n : {2, 3, 5}) {
    const SoAlgebra alg(n);
    for (int c = 0; c < (n == 5 ? 100 : 1000); ++c) {
      const ChartPoint p = random_point(rng, n);
      const Matrix k = random_compact(rng, alg);
      const ChartPoint lhs = tau(r_action(alg, k, p));
      const ChartPoint rhs = l_action(alg, alg.group_inverse(k), tau(p));
      CHECK(dist(lhs, rhs) <= 1e-10);
    }
  }
}

TEST_CASE("orbit circle data") {
  SUBCASE("fixed point gives the degenerate circle") {
    const OrbitCircle oc = orbit_circle(ChartPoint::origin(2));
    CHECK(oc.center_height == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(oc.radius == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("axis points give cosh/sinh center and radius") {
    for (double m : {2.0, 0.4, 7.5}) {
      const OrbitCircle oc = orbit_circle(make2(0.0, m));
      CHECK(oc.center_height == doctest::Approx(std::cosh(std::log(m))).epsilon(1e-14));
      CHECK(oc.radius == doctest::Approx(std::abs(std::sinh(std::log(m)))).epsilon(1e-14));
    }
  }

  SUBCASE("frozen example at (1,1)") {
    const OrbitCircle oc = orbit_circle(make2(1.0, 1.0));
    CHECK(oc.center_height == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(oc.radius == doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-15));
  }

  SUBCASE("the whole orbit stays on the circle") {
    const SoAlgebra alg(2);
    SplitMix64 rng(19);
    for (int c = 0; c < 200; ++c) {
      const ChartPoint p = random_point(rng, 2);
      const OrbitCircle oc = orbit_circle(p);
      const ChartPoint q = r_action(alg, rotation_z(alg, rng.uniform(-kPi, kPi)), p);
      const double r = std::hypot(q.x[0], q.y - oc.center_height);
      CHECK(std::abs(r - oc.radius) <= 1e-10);
    }
  }
}

TEST_CASE("axis stabilizer is the embedded block rotation group") {
  const SoAlgebra alg(3);
  const ChartPoint p{Vector::Zero(2), 2.0};

  CHECK(stabilizer_check(alg, p, Matrix::Identity(4, 4)));
  for (double t : {0.2, 0.9, 2.4}) {
    CHECK(stabilizer_check(alg, p, alg.exp_rotation(1, 2, t)));
    CHECK(!stabilizer_check(alg, p, alg.exp_rotation(2, 3, 0.5)));
  }

  Vector off(2);
  off << 0.1, 0.0;
  CHECK_THROWS_AS(stabilizer_check(alg, ChartPoint{off, 2.0}, Matrix::Identity(4, 4)),
                  std::invalid_argument);
}

TEST_CASE("action composition is contravariant for the right action") {
  SplitMix64 rng(23);
  for (int n : {2, 3}) {
    const SoAlgebra alg(n);
    for (int c = 0; c < 200; ++c) {
      const ChartPoint p = random_point(rng, n);
      const Matrix k1 = random_compact(rng, alg);
      const Matrix k2 = random_compact(rng, alg);
      CHECK(dist(r_action(alg, k2, r_action(alg, k1, p)), r_action(alg, k1 * k2, p)) <= 1e-9);
      // and covariant for the left action
      CHECK(dist(l_action(alg, k1, l_action(alg, k2, p)), l_action(alg, k1 * k2, p)) <= 1e-9);
    }
  }
}

TEST_CASE("phi is injective on random pairs") {
  const SoAlgebra alg(3);
  SplitMix64 rng(29);
  for (int c = 0; c < 100; ++c) {
    const ChartPoint p = random_point(rng, 3);
    const ChartPoint q = random_point(rng, 3);
    if (dist(p, q) < 1e-6) continue;
    CHECK((phi(alg, p) - phi(alg, q)).cwiseAbs().maxCoeff() > 1e-9);
  }
}
