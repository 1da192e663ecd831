#include "hquot/geodesic.hpp"

#include "hquot/chart.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hquot {

StateDerivative geodesic_rhs(const MetricField& field, const GeodesicState& s) {
  const int n = field.rank();
  if (s.velocity.size() != n) throw std::invalid_argument("velocity has wrong dimension");
  const ChristoffelSymbols gamma =
      christoffel(field, s.position, christoffel_step(s.position.y));
  Vector acc(n);
  for (int k = 0; k < n; ++k) {
    acc[k] = -s.velocity.dot(gamma[k] * s.velocity);
  }
  return {s.velocity, std::move(acc)};
}

StateDerivative geodesic_rhs_2d_closed(const GeodesicState& s) {
  check_chart_point(s.position);
  if (s.position.x.size() != 1 || s.velocity.size() != 2) {
    throw std::invalid_argument("closed geodesic system requires n = 2");
  }
  const double x = s.position.x[0], y = s.position.y;
  const double xp = s.velocity[0], yp = s.velocity[1];

  const double x2 = x * x, x4 = x2 * x2, x6 = x4 * x2, x8 = x4 * x4;
  const double y2 = y * y, y4 = y2 * y2, y6 = y4 * y2, y8 = y4 * y4;
  const double d = x4 + 2.0 * x2 * (y2 + 1.0) + y4 + 1.0;
  if (!(y > 0.0)) throw std::domain_error("leading coefficient vanishes at y = 0");

  // x'' (y d)^2 = 2 y x'y' A + 4 x y^2 x'^2 (x^2+1)^2 - x y'^2 B
  const double A = x6 * (4.0 * y2 + 2.0) + x4 * (6.0 * y4 + 8.0 * y2) +
                   2.0 * x2 * (2.0 * y6 + y4 + 2.0 * y2 - 1.0) + x8 + y8 - 1.0;
  const double xp1 = x2 + 1.0;
  const double B = 4.0 * xp1 * y6 + 2.0 * (3.0 * x4 + 4.0 * x2 + 1.0) * y4 +
                   4.0 * xp1 * xp1 * xp1 * y2 + xp1 * xp1 * xp1 * xp1 + y8;
  const double xacc =
      (2.0 * y * xp * yp * A + 4.0 * x * y2 * xp * xp * xp1 * xp1 - x * yp * yp * B) /
      (y2 * d * d);

  // y'' y d^2 = 4 x y x'y' C - 2 y^2 x'^2 E - y'^2 F
  const double C = x4 * (3.0 * y2 + 1.0) + x2 * (3.0 * y4 + 4.0 * y2 - 1.0) + x6 + y6 +
                   y4 + y2 - 1.0;
  const double E = 3.0 * x4 * (y2 - 1.0) + x2 * (y2 + 1.0) * (3.0 * y2 - 5.0) + x6 + y6 -
                   y4 - y2 - 1.0;
  const double F = 2.0 * x6 * (y2 + 1.0) + 4.0 * x4 * y2 -
                   2.0 * x2 * (y6 + y4 - y2 + 1.0) + x8 - (y4 + 1.0) * (y4 + 1.0);
  const double yacc =
      (4.0 * x * y * xp * yp * C - 2.0 * y2 * xp * xp * E - yp * yp * F) / (y * d * d);

  Vector acc(2);
  acc[0] = xacc;
  acc[1] = yacc;
  return {s.velocity, std::move(acc)};
}

namespace {

struct Segment {
  double t0, t1;
  Vector y0, y1;  // flat states (positions then velocities)
  Vector f0, f1;  // derivatives at the endpoints
};

Vector flat_state(const GeodesicState& s) {
  const int n = static_cast<int>(s.velocity.size());
  Vector y(2 * n);
  y.head(n - 1) = s.position.x;
  y[n - 1] = s.position.y;
  y.tail(n) = s.velocity;
  return y;
}

GeodesicState unflatten(const Vector& y, int n) {
  ChartPoint p{y.head(n - 1), y[n - 1]};
  return {std::move(p), y.tail(n)};
}

Vector flat_rhs(const MetricField& field, const Vector& y, int n) {
  if (!y.allFinite()) throw std::domain_error("trajectory state became non-finite");
  const GeodesicState s = unflatten(y, n);
  if (!(s.position.y > 0.0)) throw std::domain_error("trajectory reached the y = 0 boundary");
  const StateDerivative d = geodesic_rhs(field, s);
  Vector out(2 * n);
  out.head(n) = d.velocity;
  out.tail(n) = d.acceleration;
  return out;
}

Vector hermite(const Segment& seg, double t) {
  const double h = seg.t1 - seg.t0;
  const double s = (t - seg.t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * seg.y0 + (s3 - 2.0 * s2 + s) * h * seg.f0 +
         (-2.0 * s3 + 3.0 * s2) * seg.y1 + (s3 - s2) * h * seg.f1;
}

}  // namespace

Trajectory integrate_at(const MetricField& field, const GeodesicState& s0,
                        const std::vector<double>& times, double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-6)) {
    throw std::invalid_argument("integration tolerance must lie in [1e-12, 1e-6]");
  }
  if (times.empty()) throw std::invalid_argument("at least one output time is required");
  if (!std::is_sorted(times.begin(), times.end()) || times.front() < 0.0) {
    throw std::invalid_argument("output times must be ascending and nonnegative");
  }
  check_chart_point(s0.position);
  const int n = field.rank();
  const double T = times.back();

  // Dormand-Prince 5(4) tableau (autonomous right-hand side, so the c
  // abscissae never enter).
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory traj;
  std::vector<Segment> segments;

  Vector y = flat_state(s0);
  double t = 0.0;
  bool failed = false;
  std::string message;

  try {
    Vector f = flat_rhs(field, y, n);
    double h = std::min(0.01, T > 0.0 ? T / 10.0 : 0.01);
    const double hmin = 1e-14 * std::max(1.0, T);

    while (t < T) {
      h = std::min(h, T - t);
      const Vector k1 = f;
      const Vector k2 = flat_rhs(field, y + h * (a21 * k1), n);
      const Vector k3 = flat_rhs(field, y + h * (a31 * k1 + a32 * k2), n);
      const Vector k4 = flat_rhs(field, y + h * (a41 * k1 + a42 * k2 + a43 * k3), n);
      const Vector k5 =
          flat_rhs(field, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), n);
      const Vector k6 = flat_rhs(
          field, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), n);
      const Vector y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vector k7 = flat_rhs(field, y5, n);

      const Vector err_vec =
          h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      double err = 0.0;
      for (int i = 0; i < y.size(); ++i) {
        const double scale = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(err_vec[i]) / scale);
      }
      if (!std::isfinite(err)) err = 1e10;  // overflowing state; force rejection

      if (err <= 1.0) {
        segments.push_back({t, t + h, y, y5, k1, k7});
        t += h;
        y = y5;
        f = k7;
      }
      const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h *= factor;
      if (h < hmin && t < T) {
        failed = true;
        message = "step size underflow; trajectory truncated";
        break;
      }
    }
  } catch (const std::domain_error& e) {
    failed = true;
    message = e.what();
  }

  const double reached = segments.empty() ? 0.0 : segments.back().t1;

  // Dense output at the requested times; times past the failure point are
  // dropped from a truncated trajectory.
  const Matrix G0 = field.metric(s0.position);
  const double speed0 = std::sqrt(s0.velocity.dot(G0 * s0.velocity));
  std::size_t seg_idx = 0;
  for (double tq : times) {
    Vector yq;
    if (tq <= 0.0) {
      yq = flat_state(s0);
    } else if (tq <= reached) {
      while (seg_idx + 1 < segments.size() && segments[seg_idx].t1 < tq) ++seg_idx;
      yq = hermite(segments[seg_idx], tq);
    } else {
      break;
    }
    GeodesicState s = unflatten(yq, n);
    const Matrix G = field.metric(s.position);
    const double speed = std::sqrt(s.velocity.dot(G * s.velocity));
    traj.samples.push_back({tq, std::move(s.position), std::move(s.velocity), speed});
    traj.speed_drift = std::max(traj.speed_drift, std::abs(speed - speed0));
  }

  traj.complete = !failed && reached >= T - 1e-12;
  traj.message = std::move(message);
  if (traj.samples.empty()) {
    // The initial state is always reportable.
    traj.samples.push_back({0.0, s0.position, s0.velocity, speed0});
  }
  return traj;
}

Trajectory integrate(const MetricField& field, const GeodesicState& s0, double T,
                     double tol, int samples) {
  if (T < 0.0) throw std::invalid_argument("integration horizon must be nonnegative");
  if (samples < 1) throw std::invalid_argument("at least one sample is required");
  std::vector<double> times;
  if (T == 0.0) {
    times = {0.0};
  } else if (samples == 1) {
    times = {T};
  } else {
    times.reserve(samples);
    for (int i = 0; i < samples; ++i) {
      times.push_back(T * static_cast<double>(i) / (samples - 1));
    }
  }
  return integrate_at(field, s0, times, tol);
}

double distance_from_i(const ChartPoint& p) {
  check_chart_point(p);
  const double arg = (1.0 + p.x.squaredNorm() + p.y * p.y) / (2.0 * p.y);
  // arg >= 1 always; guard the roundoff edge at p = i.
  return std::acosh(std::max(arg, 1.0));
}

double tau_geodesic_check(const SoAlgebra& alg, const Matrix& k, double t) {
  const int n = alg.rank();
  ChartPoint gamma_t{Vector::Zero(n - 1), std::exp(t)};
  ChartPoint gamma_mt{Vector::Zero(n - 1), std::exp(-t)};
  const ChartPoint lhs = tau(r_action(alg, k, gamma_t));
  const ChartPoint rhs = l_action(alg, alg.group_inverse(k), gamma_mt);
  return std::max((lhs.x - rhs.x).cwiseAbs().maxCoeff(), std::abs(lhs.y - rhs.y));
}

}  // namespace hquot
