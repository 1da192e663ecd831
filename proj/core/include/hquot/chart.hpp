#pragma once

#include "hquot/algebra.hpp"

namespace hquot {

// The global chart phi: R^{n-1} x R+ -> NA, (x,y) -> e^{sum x_i N_i} e^{ln(y) A_1}.
Matrix phi(const SoAlgebra& alg, const ChartPoint& p);

// Chart coordinates of the group inverse: (x,y)^{-1} = (-x/y, 1/y).
ChartPoint chart_inverse(const ChartPoint& p);

// The involution identifying the two quotient charts. Identical map to
// chart_inverse, exposed under its geometric name.
ChartPoint tau(const ChartPoint& p);

// Embeds R in SO(n) as SO(n) x {1} inside SO_0(n,1). R must be n x n.
Matrix embed_compact(const SoAlgebra& alg, const Matrix& R);

// e^{z(-E_12)} for n = 2: the compact parametrization whose Moebius-type
// action formulas below hold sign-for-sign.
Matrix rotation_z(const SoAlgebra& alg, double z);

// Right action of the compact factor on the left quotient: the NA part of
// the KNA factorization of phi(p) k. k must lie in SO(n) x {1}.
ChartPoint r_action(const SoAlgebra& alg, const Matrix& k, const ChartPoint& p);

// Left action of the compact factor on the right quotient: the NA part of
// the NAK factorization of k phi(p).
ChartPoint l_action(const SoAlgebra& alg, const Matrix& k, const ChartPoint& p);

// Closed 2-dimensional action formulas, used as oracles for the generic
// decomposition-based paths. z is the angle of rotation_z.
ChartPoint r_action_closed_2d(double z, const ChartPoint& p);
ChartPoint l_action_closed_2d(double z, const ChartPoint& p);

// The Euclidean sphere on which the whole r(K)-orbit of p lies:
// center (0, c) with c = (1 + |x|^2 + y^2)/(2y), radius sqrt(|x|^2 + (y-c)^2).
struct OrbitCircle {
  double center_height;
  double radius;
};
OrbitCircle orbit_circle(const ChartPoint& p);

// True iff r(k) fixes the axis point p = (0, y), y != 1, within tol. Holds
// exactly for the embedded SO(n-1) x SO(1) (upper-left block) and fails
// elsewhere. Throws std::invalid_argument off the axis.
bool stabilizer_check(const SoAlgebra& alg, const ChartPoint& p, const Matrix& k,
                      double tol = 1e-9);

}  // namespace hquot
