#pragma once

#include "hquot/algebra.hpp"

#include <memory>
#include <vector>

namespace hquot {

struct TangentVector {
  ChartPoint base;
  Vector components;  // coefficients on (d/dx_1, ..., d/dx_{n-1}, d/dy)
};

// A metric evaluation at one chart point: the n x n matrix G together with
// the frame that produced it. Column a of `frame` holds the chart
// components of the a-th frame vector; the columns are G-orthonormal and
// G = (frame frame^T)^{-1}.
struct MetricSample {
  ChartPoint base;
  Matrix G;
  Matrix frame;
};

// Tangent matrices of the compact-orbit directions at phi(p): {E phi(p)}
// for E over the so(n) basis. Their span is the vertical space of the
// submersion onto the left quotient.
std::vector<Matrix> vertical_basis(const SoAlgebra& alg, const ChartPoint& p);

// The submersion metric at p, built from group-level data: orthonormalize
// the complement of the vertical space inside the left-invariant frame,
// project each horizontal vector to the NA section along the vertical
// directions, and read the result in chart coordinates.
MetricSample horizontal_frame(const SoAlgebra& alg, const ChartPoint& p);

// The explicit 2-dimensional orthonormal frame
//   w1 = -sqrt((x^2+1)^2 + y^4)/(sqrt(2) y) d/dx
//        - sqrt(2) x (x^2+1)/sqrt((x^2+1)^2 + y^4) d/dy
//   w2 = y sqrt(2 x^2 y^2/((x^2+1)^2 + y^4) + 1) d/dy
// used as an oracle for horizontal_frame when n = 2. Frames may differ by
// an orthogonal gauge; compare G, not the frame columns.
MetricSample closed_frame_2d(const ChartPoint& p);

// Canonical entry point for the quotient metric; dispatches to
// horizontal_frame.
MetricSample metric_matrix(const SoAlgebra& alg, const ChartPoint& p);

// The constant-curvature -1 metric G = y^{-2} I of the right quotient in
// the same chart; the cross-validation target for every numeric kernel.
MetricSample hyperbolic_metric(int n, const ChartPoint& p);

// Metric of the solvable subgroup NA as a Riemannian subspace, whose
// orthonormal basis at the identity is {N_i/sqrt(2), A_1}. Isometric to
// the hyperbolic metric through (x, y) -> (sqrt(2) x, y).
Matrix na_subspace_metric(const SoAlgebra& alg, const ChartPoint& p);

// A smooth metric field over the chart, the common interface for the
// finite-difference curvature and geodesic kernels.
class MetricField {
public:
  virtual ~MetricField() = default;
  virtual int rank() const = 0;
  virtual Matrix metric(const ChartPoint& p) const = 0;
};

class QuotientMetricField final : public MetricField {
public:
  explicit QuotientMetricField(int n) : alg_(n) {}
  int rank() const override { return alg_.rank(); }
  Matrix metric(const ChartPoint& p) const override;
  const SoAlgebra& algebra() const { return alg_; }

private:
  SoAlgebra alg_;
};

class HyperbolicMetricField final : public MetricField {
public:
  explicit HyperbolicMetricField(int n) : n_(n) {}
  int rank() const override { return n_; }
  Matrix metric(const ChartPoint& p) const override;

private:
  int n_;
};

// Gamma[k](i,j): Levi-Civita symbols from G by Richardson-extrapolated
// central differences with steps h and h/2. Requires 0 < h <= 1e-3 and
// y > 2h; throws std::domain_error otherwise.
using ChristoffelSymbols = std::vector<Matrix>;
ChristoffelSymbols christoffel(const MetricField& field, const ChartPoint& p, double h);

// Base step 1e-4 max(1, y), clamped to the christoffel precondition.
double christoffel_step(double y);

// Sectional curvature of span{u, v} at p from the curvature tensor, with
// the tensor assembled out of finite differences of christoffel. Throws
// std::domain_error when the plane is degenerate (Gram determinant below
// 1e-8 after normalization).
double sectional_numeric(const MetricField& field, const ChartPoint& p,
                         const Vector& u, const Vector& v);

// kappa(x, y) = 4 y^2 (x^4 + 2 x^2 (y^2+1) + y^4 + 3 y^2 + 1)
//             / (x^4 + 2 x^2 (y^2+1) + y^4 + 1)^2,  the n = 2 curvature.
double kappa2_closed(double x, double y);

// Radial coefficient f(y) = kappa2_closed(0, y) and spherical coefficient
// g(y) = 2 (1 + 2y^2 + 4y^4 + 2y^6 + y^8)/(1 + y^4)^2 of the curvature at
// an axis point; g's denominator exponent is fixed by g(1) = 5 and by the
// numeric oracle.
double kappa_radial_coefficient(double y);
double kappa_tangent_coefficient(double y);

// kappa(y, theta) = cos^2(theta) f(y) + sin^2(theta) g(y): curvature of a
// plane at (0, y) whose angle with the y-axis is theta. Valid for y >= 1;
// takes values in (0, 5].
double kappa_n_closed(double y, double theta);

}  // namespace hquot
