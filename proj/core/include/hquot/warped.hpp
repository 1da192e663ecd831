#pragma once

#include "hquot/algebra.hpp"

namespace hquot {

// A point (t, u) of the warped model (1, infinity) x_{e^{2 phi}} S^{n-1};
// u is a Euclidean unit vector in R^n and the base point of the sphere is
// the north pole n_hat = (0,...,0,1). The same struct carries points of the
// companion hyperbolic model over (0, 1).
struct WarpedPoint {
  double t = 2.0;
  Vector u;
};

// Throws std::domain_error unless t >= 1 + 1e-6 (the warp factor vanishes
// at t = 1, so every model evaluation keeps a margin) and |u| = 1 to 1e-12.
void check_warped_point(const WarpedPoint& w, int n);

// e^{2 phi(t)} = sinh^2(ln t) / cosh(2 ln t), t > 1.
double warp_factor(double t);

// phi(t) = ln sinh(ln t) - (1/2) ln cosh(2 ln t).
double warp_exponent(double t);

// <grad phi, t d/dt> = coth(ln t) - tanh(2 ln t) and the Hessian value
// h_phi(t d/dt, t d/dt) = -csch^2(ln t) - 2 sech^2(2 ln t).
struct WarpGradHess {
  double grad;
  double hessian;
};
WarpGradHess warp_gradient_hessian(double t);

// Rotation R in SO(n) with R n_hat = u: the rotation inside span{n_hat, u},
// the identity at u = n_hat, and, at u = -n_hat, the half-turn of the
// (e_1, n_hat) plane as a fixed convention.
Matrix rotation_to(const Vector& u);

// The model isometry f(t, a n_hat) = r(a^{-1}) (0, t) into the chart.
ChartPoint f_map(const SoAlgebra& alg, const WarpedPoint& w);

// n = 2 closed form (sinh(ln t) sin z, sinh(ln t) cos z + cosh(ln t)) with
// u = (sin z, cos z); the oracle for f_map.
ChartPoint f_map_closed_2d(double t, double z);

// Curvature of a plane containing the radial direction, computed from the
// warp gradient/Hessian as -(grad^2 + hess) and expanded to the
// cancellation-free form 1 + 2 coth(ln t) tanh(2 ln t) - 3 tanh^2(2 ln t).
// Equals 4 t^2 (1 + 3 t^2 + t^4)/(1 + t^4)^2 to machine precision.
double kappa_radial_warped(double t);

// Curvature of a plane tangent to the sphere factor,
// e^{-2 phi(y)} - <grad phi, w_n>^2, expanded to
// 1 + 2 coth(ln y) tanh(2 ln y) - tanh^2(2 ln y); equals the tangent
// coefficient of kappa_n_closed.
double kappa_tangent_warped(double y);

// Curvature of span{a w_n + b w, c w_n + d w~} for unit w, w~ tangent to
// the sphere and orthogonal: (a^2 d^2 + b^2 c^2) kn + b^2 d^2 kt.
double kappa_mixed(double a, double b, double c, double d, double kn, double kt);

// Max-norm gap at (t, z) between the quotient metric pulled back through
// f_map and the warped metric diag(1/t^2, e^{2 phi(t)}), the Jacobian taken
// by central differences. n = 2.
double pullback_isometry_residual(const SoAlgebra& alg, double t, double z);

// The induced involution between the two warped models: (t, u) -> (1/t, u).
WarpedPoint tau_prime(const WarpedPoint& w);

// The companion isometry of the hyperbolic model over (0,1):
// f~(s, u) = l(u_hat) (0, s).
ChartPoint hyperbolic_model_map(const SoAlgebra& alg, const WarpedPoint& w);

// Max-norm gap at (s, z) between the hyperbolic metric pulled back through
// hyperbolic_model_map and diag(1/s^2, sinh^2(ln s)). n = 2, 0 < s < 1.
double hyperbolic_pullback_residual(const SoAlgebra& alg, double s, double z);

}  // namespace hquot
