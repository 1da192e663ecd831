#pragma once

#include <Eigen/Dense>

#include <vector>

namespace hquot {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A point of the global upper-half-space chart on the solvable factor NA:
// x in R^{n-1}, y > 0.
struct ChartPoint {
  Vector x;
  double y = 1.0;

  static ChartPoint origin(int n) { return {Vector::Zero(n - 1), 1.0}; }
};

// Throws std::invalid_argument unless y > 0 and all coordinates are finite.
void check_chart_point(const ChartPoint& p);

// The basis of the Iwasawa splitting so(n,1) = k + a + n:
// nilpotents N_i (i = 1..n-1), the boost generator A_1 = E_{n,n+1}, and the
// compact subalgebra basis {E_ij : 1 <= i < j <= n}.
struct IwasawaBasis {
  int n = 0;
  std::vector<Matrix> nilpotent;
  Matrix boost;
  std::vector<Matrix> compact;
};

// The Lie algebra so(n,1) with the inner product that declares the basis
// {E_ij : 1 <= i < j <= n+1} orthonormal, together with the group-level
// kernels used everywhere else: matrix exponential, membership checks,
// and the NAK/KNA decompositions of SO_0(n,1).
//
// Matrices are (n+1) x (n+1) and dense; the supported rank range is
// 2 <= n <= 8. Indices in the public API are 1-based, matching the
// customary E_ij notation.
class SoAlgebra {
public:
  explicit SoAlgebra(int n);

  int rank() const { return n_; }
  int matrix_size() const { return n_ + 1; }
  // Dimension of so(n,1) = number of pairs i < j.
  int dim() const { return n_ * (n_ + 1) / 2; }
  // Dimension of the compact subalgebra so(n).
  int compact_dim() const { return n_ * (n_ - 1) / 2; }

  // J = diag(-1,...,-1, 1) with n minus ones.
  const Matrix& form() const { return J_; }

  // E_ij = eps_ij e_ij + e_ji with eps_ij = -1 for j < n+1 and +1 for
  // j = n+1. Requires 1 <= i < j <= n+1.
  const Matrix& basis_element(int i, int j) const;

  // Flat index of the pair (i,j), lexicographic over 1 <= i < j <= n+1.
  int pair_index(int i, int j) const;

  const std::vector<Matrix>& nilpotent_basis() const { return iwasawa_.nilpotent; }
  const Matrix& boost_generator() const { return iwasawa_.boost; }
  const std::vector<Matrix>& compact_basis() const { return iwasawa_.compact; }
  const IwasawaBasis& iwasawa() const { return iwasawa_; }

  // Coordinates of X in the E_ij basis (lexicographic pair order) and back.
  Vector coefficients(const Matrix& X) const;
  Matrix from_coefficients(const Vector& c) const;

  // Inner product in which the E_ij are orthonormal. Throws
  // std::domain_error if either argument fails the algebra membership test.
  double inner(const Matrix& X, const Matrix& Y) const;

  // X^T J + J X = 0 within tol.
  bool is_algebra_element(const Matrix& X, double tol = 1e-12) const;
  // g J g^T = J and det g = 1 within tol, g(n+1,n+1) >= 1 (identity
  // component).
  bool is_group_element(const Matrix& g, double tol = 1e-10) const;

  // Matrix exponential by scaling-and-squaring on a Taylor series; exact to
  // machine precision at the norms that occur here.
  Matrix exp(const Matrix& X) const;

  // Closed-form exponentials of the three Iwasawa blocks. These serve as an
  // independent cross-check of exp() and as the exact kernels of the chart.
  Matrix exp_nilpotent(const Vector& x) const;        // e^{sum_i x_i N_i}
  Matrix exp_boost(double t) const;                   // e^{t A_1}
  Matrix exp_rotation(int i, int j, double z) const;  // e^{z E_ij}, j <= n

  // Exact inverse J g^T J of a group element.
  Matrix group_inverse(const Matrix& g) const;

  struct NakDecomposition {
    ChartPoint na;   // chart coordinates of the NA factor
    Matrix k;        // element of SO(n) x {1}
    double residual; // max-norm reconstruction + membership defect
  };
  struct KnaDecomposition {
    Matrix k;
    ChartPoint na;
    double residual;
  };

  // g = phi(x,y) k. Throws std::runtime_error if the residual exceeds tol
  // (g outside SO_0(n,1) or a conditioning failure).
  NakDecomposition nak_decompose(const Matrix& g, double tol = 1e-10) const;
  // g = k phi(x,y), obtained from the NAK factors of g^{-1}.
  KnaDecomposition kna_decompose(const Matrix& g, double tol = 1e-10) const;

private:
  int n_;
  Matrix J_;
  std::vector<Matrix> basis_;  // all E_ij, lexicographic
  IwasawaBasis iwasawa_;
};

// Standalone construction of the Iwasawa basis for rank n (n >= 2).
IwasawaBasis iwasawa_basis(int n);

// [X, Y] = XY - YX.
inline Matrix bracket(const Matrix& X, const Matrix& Y) { return X * Y - Y * X; }

}  // namespace hquot
