#include "hquot/warped.hpp"

#include "hquot/chart.hpp"
#include "hquot/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace hquot {

namespace {

constexpr double kUnitMargin = 1e-6;

void check_warp_parameter(double t) {
  if (!(t >= 1.0 + kUnitMargin)) {
    throw std::domain_error("warped model requires t >= 1 + 1e-6");
  }
}

}  // namespace

void check_warped_point(const WarpedPoint& w, int n) {
  check_warp_parameter(w.t);
  if (w.u.size() != n || std::abs(w.u.norm() - 1.0) > 1e-12) {
    throw std::domain_error("sphere coordinate must be a unit vector in R^n");
  }
}

double warp_factor(double t) {
  check_warp_parameter(t);
  const double u = std::log(t);
  const double s = std::sinh(u);
  return s * s / std::cosh(2.0 * u);
}

double warp_exponent(double t) {
  check_warp_parameter(t);
  const double u = std::log(t);
  return std::log(std::sinh(u)) - 0.5 * std::log(std::cosh(2.0 * u));
}

WarpGradHess warp_gradient_hessian(double t) {
  check_warp_parameter(t);
  const double u = std::log(t);
  const double coth = 1.0 / std::tanh(u);
  const double tanh2 = std::tanh(2.0 * u);
  const double csch = 1.0 / std::sinh(u);
  const double sech2 = 1.0 / std::cosh(2.0 * u);
  return {coth - tanh2, -csch * csch - 2.0 * sech2 * sech2};
}

Matrix rotation_to(const Vector& u) {
  const int n = static_cast<int>(u.size());
  if (n < 2 || std::abs(u.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("rotation target must be a unit vector, n >= 2");
  }
  Vector pole = Vector::Zero(n);
  pole[n - 1] = 1.0;

  const double c = u.dot(pole);
  Vector rest = u - c * pole;
  const double s = rest.norm();
  if (s < 1e-14) {
    if (c > 0.0) return Matrix::Identity(n, n);
    // u = -pole: half-turn of the (e_1, pole) plane.
    Matrix R = Matrix::Identity(n, n);
    R(0, 0) = -1.0;
    R(n - 1, n - 1) = -1.0;
    return R;
  }
  rest /= s;
  Matrix R = Matrix::Identity(n, n);
  R += (c - 1.0) * (pole * pole.transpose() + rest * rest.transpose());
  R += s * (rest * pole.transpose() - pole * rest.transpose());
  return R;
}

ChartPoint f_map(const SoAlgebra& alg, const WarpedPoint& w) {
  const int n = alg.rank();
  check_warped_point(w, n);
  const Matrix a = rotation_to(w.u);
  ChartPoint axis{Vector::Zero(n - 1), w.t};
  return r_action(alg, embed_compact(alg, a.transpose()), axis);
}

ChartPoint f_map_closed_2d(double t, double z) {
  check_warp_parameter(t);
  const double u = std::log(t);
  Vector x(1);
  x[0] = std::sinh(u) * std::sin(z);
  return {std::move(x), std::sinh(u) * std::cos(z) + std::cosh(u)};
}

double kappa_radial_warped(double t) {
  check_warp_parameter(t);
  // -(grad^2 + hess) expanded with coth^2 - csch^2 = 1 and
  // sech^2 = 1 - tanh^2; the expansion avoids the cancellation of the two
  // large terms near t = 1.
  const double u = std::log(t);
  const double coth = 1.0 / std::tanh(u);
  const double tanh2 = std::tanh(2.0 * u);
  return 1.0 + 2.0 * coth * tanh2 - 3.0 * tanh2 * tanh2;
}

double kappa_tangent_warped(double y) {
  check_warp_parameter(y);
  // e^{-2 phi} - grad^2 with e^{-2 phi} = csch^2 + 2, same expansion.
  const double u = std::log(y);
  const double coth = 1.0 / std::tanh(u);
  const double tanh2 = std::tanh(2.0 * u);
  return 1.0 + 2.0 * coth * tanh2 - tanh2 * tanh2;
}

double kappa_mixed(double a, double b, double c, double d, double kn, double kt) {
  return (a * a * d * d + b * b * c * c) * kn + b * b * d * d * kt;
}

namespace {

Vector circle_point(double z) {
  Vector u(2);
  u[0] = std::sin(z);
  u[1] = std::cos(z);
  return u;
}

Vector chart_coords(const ChartPoint& p) {
  Vector out(p.x.size() + 1);
  out.head(p.x.size()) = p.x;
  out[p.x.size()] = p.y;
  return out;
}

// Columns: d(map)/dt and d(map)/dz by central differences.
template <typename MapFn>
Matrix jacobian_tz(MapFn&& map, double t, double z, double ht, double hz) {
  const Vector dt = (chart_coords(map(t + ht, z)) - chart_coords(map(t - ht, z))) / (2.0 * ht);
  const Vector dz = (chart_coords(map(t, z + hz)) - chart_coords(map(t, z - hz))) / (2.0 * hz);
  Matrix J(dt.size(), 2);
  J.col(0) = dt;
  J.col(1) = dz;
  return J;
}

}  // namespace

double pullback_isometry_residual(const SoAlgebra& alg, double t, double z) {
  if (alg.rank() != 2) throw std::invalid_argument("pullback residual is the n = 2 check");
  check_warp_parameter(t);
  const double ht = 1e-5 * t, hz = 1e-5;
  if (t - ht <= 1.0) throw std::domain_error("t too close to 1 for the finite-difference step");

  auto map = [&](double tt, double zz) { return f_map(alg, {tt, circle_point(zz)}); };
  const Matrix J = jacobian_tz(map, t, z, ht, hz);

  const Matrix G = horizontal_frame(alg, map(t, z)).G;
  const Matrix pulled = J.transpose() * G * J;

  Matrix target = Matrix::Zero(2, 2);
  target(0, 0) = 1.0 / (t * t);
  target(1, 1) = warp_factor(t);
  return (pulled - target).cwiseAbs().maxCoeff();
}

WarpedPoint tau_prime(const WarpedPoint& w) {
  // Defined on both models: (1, infinity) maps onto (0, 1) and back.
  if (!(w.t > 0.0)) throw std::domain_error("model parameter must be positive");
  return {1.0 / w.t, w.u};
}

ChartPoint hyperbolic_model_map(const SoAlgebra& alg, const WarpedPoint& w) {
  const int n = alg.rank();
  if (!(w.t > 0.0)) throw std::domain_error("hyperbolic model requires t > 0");
  if (w.u.size() != n || std::abs(w.u.norm() - 1.0) > 1e-12) {
    throw std::domain_error("sphere coordinate must be a unit vector in R^n");
  }
  const Matrix a = rotation_to(w.u);
  ChartPoint axis{Vector::Zero(n - 1), w.t};
  return l_action(alg, embed_compact(alg, a), axis);
}

double hyperbolic_pullback_residual(const SoAlgebra& alg, double s, double z) {
  if (alg.rank() != 2) throw std::invalid_argument("pullback residual is the n = 2 check");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("hyperbolic model lives over (0, 1)");
  const double ht = 1e-5 * s, hz = 1e-5;

  auto map = [&](double tt, double zz) {
    return hyperbolic_model_map(alg, {tt, circle_point(zz)});
  };
  const Matrix J = jacobian_tz(map, s, z, ht, hz);

  const Matrix G = hyperbolic_metric(2, map(s, z)).G;
  const Matrix pulled = J.transpose() * G * J;

  const double sh = std::sinh(std::log(s));
  Matrix target = Matrix::Zero(2, 2);
  target(0, 0) = 1.0 / (s * s);
  target(1, 1) = sh * sh;
  return (pulled - target).cwiseAbs().maxCoeff();
}

}  // namespace hquot
