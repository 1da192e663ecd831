#pragma once

#include "hquot/metric.hpp"

#include <string>
#include <vector>

namespace hquot {

struct GeodesicState {
  ChartPoint position;
  Vector velocity;  // chart components, size n
};

struct StateDerivative {
  Vector velocity;
  Vector acceleration;
};

// First-order form of the geodesic equation: acc^k = -Gamma^k_ij v^i v^j
// with the symbols evaluated by christoffel at the current point.
StateDerivative geodesic_rhs(const MetricField& field, const GeodesicState& s);

// The explicit 2-dimensional geodesic system, solved for the second
// derivatives. Independent of the finite-difference path; agrees with
// geodesic_rhs on the quotient metric to 1e-6.
StateDerivative geodesic_rhs_2d_closed(const GeodesicState& s);

struct TrajectorySample {
  double t;
  ChartPoint position;
  Vector velocity;
  double speed;  // |velocity|_G at the sample
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool complete = true;
  double speed_drift = 0.0;  // max |speed - speed(0)| over the samples
  std::string message;

  const TrajectorySample& back() const { return samples.back(); }
};

// Adaptive Dormand-Prince 5(4) integration over [0, T] with dense output
// by cubic Hermite interpolation at `samples` evenly spaced times
// (endpoints included; T = 0 yields the initial state only). tol is used
// for both the absolute and relative error control and must lie in
// [1e-12, 1e-6]. A step-size underflow or a boundary-proximity failure of
// the right-hand side ends the integration early: the trajectory keeps the
// samples reached and reports complete = false.
Trajectory integrate(const MetricField& field, const GeodesicState& s0, double T,
                     double tol, int samples);

// Same, at caller-chosen times (ascending, within [0, T_max handled by the
// largest entry]).
Trajectory integrate_at(const MetricField& field, const GeodesicState& s0,
                        const std::vector<double>& times, double tol);

// Geodesic distance from the fixed point i = (0, 1):
// arccosh((1 + |x|^2 + y^2)/(2y)).
double distance_from_i(const ChartPoint& p);

// Residual of tau(r(k) gamma(t)) against l(k^{-1}) gamma(-t) for the axis
// geodesic gamma(t) = (0, e^t); the two sides agree because tau reverses
// the axis geodesic and intertwines the two actions.
double tau_geodesic_check(const SoAlgebra& alg, const Matrix& k, double t);

}  // namespace hquot
