#include "hquot/chart.hpp"
#include "hquot/geodesic.hpp"
#include "hquot/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace hquot;

namespace {

ChartPoint make2(double x, double y) {
  Vector v(1);
  v[0] = x;
  return {v, y};
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

double dist(const ChartPoint& a, const ChartPoint& b) {
  return std::max((a.x - b.x).cwiseAbs().maxCoeff(), std::abs(a.y - b.y));
}

}  // namespace

TEST_CASE("right-hand side along the axis ray") {
  SUBCASE("hyperbolic vertical ray") {
    const HyperbolicMetricField hyp(2);
    const double y = 1.7;
    const StateDerivative d = geodesic_rhs(hyp, {make2(0.0, y), vec2(0.0, y)});
    CHECK(std::abs(d.acceleration[0]) <= 1e-9);
    CHECK(d.acceleration[1] == doctest::Approx(y).epsilon(1e-8));
  }

  SUBCASE("quotient metric forces the same axis acceleration") {
    for (int n : {2, 3, 4}) {
      const QuotientMetricField field(n);
      for (double t : {-0.4, 0.0, 0.8}) {
        const double y = std::exp(t);
        Vector vel = Vector::Zero(n);
        vel[n - 1] = y;
        const StateDerivative d = geodesic_rhs(field, {{Vector::Zero(n - 1), y}, vel});
        for (int i = 0; i < n - 1; ++i) CHECK(std::abs(d.acceleration[i]) <= 1e-8);
        CHECK(d.acceleration[n - 1] == doctest::Approx(y).epsilon(1e-8));
      }
    }
  }

  SUBCASE("zero velocity gives zero acceleration") {
    const QuotientMetricField field(2);
    const StateDerivative d = geodesic_rhs(field, {make2(0.3, 1.2), vec2(0.0, 0.0)});
    CHECK(d.acceleration.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("explicit 2d geodesic system") {
  SUBCASE("axis solution satisfies the system") {
    for (double t : {0.0, 0.5, 1.3}) {
      const double y = std::exp(t);
      const StateDerivative d = geodesic_rhs_2d_closed({make2(0.0, y), vec2(0.0, y)});
      CHECK(std::abs(d.acceleration[0]) <= 1e-12);
      CHECK(d.acceleration[1] == doctest::Approx(y).epsilon(1e-12));
    }
  }

  SUBCASE("rest states have zero acceleration") {
    const StateDerivative d = geodesic_rhs_2d_closed({make2(0.7, 2.1), vec2(0.0, 0.0)});
    CHECK(d.acceleration.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("matches the finite-difference path at random states") {
    const QuotientMetricField field(2);
    SplitMix64 rng(53);
    for (int c = 0; c < 100; ++c) {
      const GeodesicState s{make2(rng.uniform(-2.0, 2.0), std::exp(rng.uniform(-1.2, 1.2))),
                            vec2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))};
      const StateDerivative a = geodesic_rhs(field, s);
      const StateDerivative b = geodesic_rhs_2d_closed(s);
      CHECK((a.acceleration - b.acceleration).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }

  SUBCASE("state at (0,1) with unit x velocity") {
    const QuotientMetricField field(2);
    const GeodesicState s{ChartPoint::origin(2), vec2(1.0, 0.0)};
    const StateDerivative a = geodesic_rhs(field, s);
    const StateDerivative b = geodesic_rhs_2d_closed(s);
    CHECK((a.acceleration - b.acceleration).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("integration") {
  const QuotientMetricField field(2);

  SUBCASE("T = 0 returns the initial state") {
    const Trajectory traj = integrate(field, {make2(0.3, 1.4), vec2(0.1, 0.2)}, 0.0, 1e-9, 5);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].t == 0.0);
    CHECK(traj.complete);
  }

  SUBCASE("axis ray reaches (0, m) after arc length ln m") {
    for (double m : {2.0, 3.5}) {
      const Trajectory traj =
          integrate(field, {ChartPoint::origin(2), vec2(0.0, 1.0)}, std::log(m), 1e-10, 17);
      REQUIRE(traj.complete);
      CHECK(dist(traj.back().position, make2(0.0, m)) <= 1e-8);
      CHECK(traj.speed_drift <= 10.0 * 1e-10 * (1.0 + std::log(m)) + 1e-12);
    }
  }

  SUBCASE("x-direction start from the origin traces the alpha = 0 hyperbola") {
    const Trajectory traj =
        integrate(field, {ChartPoint::origin(2), vec2(1.0, 0.0)}, 1.2, 1e-10, 33);
    REQUIRE(traj.complete);
    for (const auto& s : traj.samples) {
      const double x = s.position.x[0], y = s.position.y;
      CHECK(std::abs(x * x - y * y + 1.0) <= 1e-6);
      CHECK(std::abs(s.speed - 1.0) <= 1e-6);
    }
  }

  SUBCASE("tolerance preconditions") {
    CHECK_THROWS_AS(integrate(field, {make2(0.0, 1.0), vec2(0.0, 1.0)}, 1.0, 1e-3, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(field, {make2(0.0, 1.0), vec2(0.0, 1.0)}, -1.0, 1e-9, 5),
                    std::invalid_argument);
  }

  SUBCASE("boundary approach truncates with a partial trajectory") {
    // Down the axis the height decays like e^{-t}; far enough down, the
    // metric overflows and the step control gives up.
    const Trajectory traj =
        integrate(field, {make2(0.0, 0.5), vec2(0.0, -0.5)}, 600.0, 1e-9, 61);
    CHECK(!traj.complete);
    CHECK(!traj.message.empty());
    CHECK(!traj.samples.empty());
    CHECK(traj.samples.back().t < 600.0);
  }
}

TEST_CASE("hyperbolic control geodesics") {
  const HyperbolicMetricField hyp(2);

  SUBCASE("vertical ray is exponential") {
    const Trajectory traj =
        integrate(hyp, {ChartPoint::origin(2), vec2(0.0, 1.0)}, 1.0, 1e-10, 9);
    REQUIRE(traj.complete);
    CHECK(dist(traj.back().position, make2(0.0, std::exp(1.0))) <= 1e-6);
  }

  SUBCASE("horizontal start traces the unit half-circle") {
    const Trajectory traj =
        integrate(hyp, {ChartPoint::origin(2), vec2(1.0, 0.0)}, 1.5, 1e-10, 33);
    REQUIRE(traj.complete);
    for (const auto& s : traj.samples) {
      CHECK(std::abs(s.position.x[0] * s.position.x[0] + s.position.y * s.position.y - 1.0) <=
            1e-6);
    }
  }
}

TEST_CASE("distance from the fixed point") {
  CHECK(distance_from_i(ChartPoint::origin(2)) == 0.0);
  for (double m : {2.0, 0.3, 5.0}) {
    CHECK(distance_from_i(make2(0.0, m)) ==
          doctest::Approx(std::abs(std::log(m))).epsilon(1e-14));
  }
  CHECK(distance_from_i(make2(1.0, 1.0)) == doctest::Approx(std::acosh(1.5)).epsilon(1e-14));

  SUBCASE("matches integrated arc length") {
    const QuotientMetricField field(2);
    SplitMix64 rng(59);
    for (int c = 0; c < 5; ++c) {
      const ChartPoint target = make2(rng.uniform(-1.0, 1.0), std::exp(rng.uniform(-1.0, 1.0)));
      const double d = distance_from_i(target);
      if (d < 0.1) continue;
      const double cc = (1.0 + target.x.squaredNorm() + target.y * target.y) / (2.0 * target.y);
      Vector u(2);
      u[0] = target.x[0] / std::sinh(d);
      u[1] = (target.y - cc) / std::sinh(d);
      const Trajectory traj = integrate(field, {ChartPoint::origin(2), u}, d, 1e-10, 9);
      REQUIRE(traj.complete);
      CHECK(dist(traj.back().position, target) <= 1e-6);
    }
  }
}

TEST_CASE("tau reverses the axis geodesic consistently with both actions") {
  const SoAlgebra alg(2);
  CHECK(tau_geodesic_check(alg, Matrix::Identity(3, 3), 0.8) <= 1e-14);

  SplitMix64 rng(61);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const Matrix k = alg.exp_rotation(1, 2, rng.uniform(-3.1, 3.1));
    worst = std::max(worst, tau_geodesic_check(alg, k, rng.uniform(-1.5, 1.5)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("the right action carries geodesics to geodesics") {
  const QuotientMetricField field(3);
  const SoAlgebra alg(3);
  SplitMix64 rng(67);
  const Matrix k = alg.exp_rotation(1, 3, 0.7) * alg.exp_rotation(2, 3, -0.4);

  Vector x0(2);
  x0 << 0.3, -0.2;
  const ChartPoint p0{x0, 1.3};
  Vector v0(3);
  v0 << 0.4, 0.1, 0.5;
  const Matrix G0 = field.metric(p0);
  v0 /= std::sqrt(v0.dot(G0 * v0));

  const Trajectory traj = integrate(field, {p0, v0}, 0.7, 1e-10, 8);
  REQUIRE(traj.complete);

  // Push the initial condition through the action and integrate again.
  const double h = 1e-5;
  Matrix J(3, 3);
  for (int d = 0; d < 3; ++d) {
    ChartPoint plus = p0, minus = p0;
    if (d < 2) {
      plus.x[d] += h;
      minus.x[d] -= h;
    } else {
      plus.y += h;
      minus.y -= h;
    }
    const ChartPoint a = r_action(alg, k, plus), b = r_action(alg, k, minus);
    Vector diff(3);
    diff.head(2) = (a.x - b.x) / (2.0 * h);
    diff[2] = (a.y - b.y) / (2.0 * h);
    J.col(d) = diff;
  }
  const Trajectory mapped = integrate(field, {r_action(alg, k, p0), J * v0}, 0.7, 1e-10, 8);
  REQUIRE(mapped.complete);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    CHECK(dist(r_action(alg, k, traj.samples[i].position), mapped.samples[i].position) <= 1e-6);
  }
}
