#include "hquot/algebra.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hquot {

void check_chart_point(const ChartPoint& p) {
  if (!(p.y > 0.0) || !std::isfinite(p.y) || !p.x.allFinite()) {
    throw std::invalid_argument("chart point requires finite coordinates and y > 0");
  }
}

SoAlgebra::SoAlgebra(int n) : n_(n) {
  if (n < 2 || n > 8) {
    throw std::invalid_argument("rank must satisfy 2 <= n <= 8");
  }
  const int m = n_ + 1;
  J_ = Matrix::Identity(m, m);
  for (int i = 0; i < n_; ++i) J_(i, i) = -1.0;

  basis_.reserve(dim());
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const double eps = (j < m) ? -1.0 : 1.0;
      Matrix E = Matrix::Zero(m, m);
      E(i - 1, j - 1) = eps;
      E(j - 1, i - 1) = 1.0;
      basis_.push_back(std::move(E));
    }
  }

  iwasawa_.n = n_;
  for (int i = 1; i <= n_ - 1; ++i) {
    iwasawa_.nilpotent.push_back(basis_element(i, n_) + basis_element(i, n_ + 1));
  }
  iwasawa_.boost = basis_element(n_, n_ + 1);
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) {
      iwasawa_.compact.push_back(basis_element(i, j));
    }
  }
}

const Matrix& SoAlgebra::basis_element(int i, int j) const {
  return basis_[pair_index(i, j)];
}

int SoAlgebra::pair_index(int i, int j) const {
  const int m = n_ + 1;
  if (i < 1 || j <= i || j > m) {
    std::ostringstream msg;
    msg << "basis index (" << i << "," << j << ") outside 1 <= i < j <= " << m;
    throw std::invalid_argument(msg.str());
  }
  // Pairs (1,2)...(1,m) come first, then (2,3)...(2,m), etc.
  const int before_row = (i - 1) * m - i * (i - 1) / 2;
  return before_row + (j - i - 1);
}

Vector SoAlgebra::coefficients(const Matrix& X) const {
  const int m = n_ + 1;
  Vector c(dim());
  int idx = 0;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      // E_ij contributes eps at (i,j) and +1 at (j,i); average the two
      // reads so exact algebra elements stay exact.
      if (j < m) {
        c[idx++] = 0.5 * (X(j - 1, i - 1) - X(i - 1, j - 1));
      } else {
        c[idx++] = 0.5 * (X(j - 1, i - 1) + X(i - 1, j - 1));
      }
    }
  }
  return c;
}

Matrix SoAlgebra::from_coefficients(const Vector& c) const {
  if (c.size() != dim()) throw std::invalid_argument("coefficient vector has wrong size");
  const int m = n_ + 1;
  Matrix X = Matrix::Zero(m, m);
  int idx = 0;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const double eps = (j < m) ? -1.0 : 1.0;
      X(i - 1, j - 1) += eps * c[idx];
      X(j - 1, i - 1) += c[idx];
      ++idx;
    }
  }
  return X;
}

double SoAlgebra::inner(const Matrix& X, const Matrix& Y) const {
  if (!is_algebra_element(X) || !is_algebra_element(Y)) {
    throw std::domain_error("inner product arguments must lie in so(n,1)");
  }
  return coefficients(X).dot(coefficients(Y));
}

bool SoAlgebra::is_algebra_element(const Matrix& X, double tol) const {
  if (X.rows() != n_ + 1 || X.cols() != n_ + 1) return false;
  return (X.transpose() * J_ + J_ * X).cwiseAbs().maxCoeff() <= tol;
}

bool SoAlgebra::is_group_element(const Matrix& g, double tol) const {
  if (g.rows() != n_ + 1 || g.cols() != n_ + 1) return false;
  if ((g * J_ * g.transpose() - J_).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(g.determinant() - 1.0) > tol) return false;
  return g(n_, n_) >= 1.0 - tol;
}

Matrix SoAlgebra::exp(const Matrix& X) const {
  const int m = static_cast<int>(X.rows());
  const double norm = X.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Matrix A = X / std::ldexp(1.0, squarings);

  Matrix term = Matrix::Identity(m, m);
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * A) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Matrix SoAlgebra::exp_nilpotent(const Vector& x) const {
  if (x.size() != n_ - 1) throw std::invalid_argument("nilpotent coordinate has wrong size");
  const int m = n_ + 1;
  // sum x_i N_i is nilpotent of order 3 for every n, so the series is exact.
  Matrix X = Matrix::Zero(m, m);
  for (int i = 0; i < n_ - 1; ++i) X += x[i] * iwasawa_.nilpotent[i];
  return Matrix::Identity(m, m) + X + 0.5 * (X * X);
}

Matrix SoAlgebra::exp_boost(double t) const {
  const int m = n_ + 1;
  Matrix g = Matrix::Identity(m, m);
  const double c = std::cosh(t), s = std::sinh(t);
  g(n_ - 1, n_ - 1) = c;
  g(n_ - 1, n_) = s;
  g(n_, n_ - 1) = s;
  g(n_, n_) = c;
  return g;
}

Matrix SoAlgebra::exp_rotation(int i, int j, double z) const {
  if (i < 1 || j <= i || j > n_) {
    throw std::invalid_argument("rotation generator requires 1 <= i < j <= n");
  }
  const int m = n_ + 1;
  // e^{z E_ij} rotates the (i,j) coordinate plane: E_ij = -e_ij + e_ji.
  Matrix g = Matrix::Identity(m, m);
  const double c = std::cos(z), s = std::sin(z);
  g(i - 1, i - 1) = c;
  g(j - 1, j - 1) = c;
  g(i - 1, j - 1) = -s;
  g(j - 1, i - 1) = s;
  return g;
}

Matrix SoAlgebra::group_inverse(const Matrix& g) const {
  return J_ * g.transpose() * J_;
}

namespace {

// phi(x,y) = e^{sum x_i N_i} e^{ln(y) A_1}, assembled from the exact block
// exponentials. Kept here so the decompositions do not depend on chart.cpp.
Matrix phi_matrix(const SoAlgebra& alg, const ChartPoint& p) {
  return alg.exp_nilpotent(p.x) * alg.exp_boost(std::log(p.y));
}

}  // namespace

SoAlgebra::NakDecomposition SoAlgebra::nak_decompose(const Matrix& g, double tol) const {
  const int m = n_ + 1;
  if (g.rows() != m || g.cols() != m) {
    throw std::invalid_argument("group element has wrong size");
  }

  // The compact factor fixes e_{n+1}, so the last column of g equals the
  // last column of phi(x,y):
  //   v_{1..n-1} = x/y,  v_n = sinh(ln y) + |x|^2/(2y),
  //   v_{n+1} = cosh(ln y) + |x|^2/(2y),
  // hence y = 1/(v_{n+1} - v_n) and x = y v_{1..n-1}.
  const Vector v = g.col(m - 1);
  const double denom = v[m - 1] - v[m - 2];
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw std::runtime_error("NAK decomposition failed: last column not on the hyperboloid sheet");
  }
  ChartPoint na{v.head(n_ - 1) * (1.0 / denom), 1.0 / denom};

  const Matrix phi = phi_matrix(*this, na);
  const Matrix k = group_inverse(phi) * g;

  double residual = (phi * k - g).cwiseAbs().maxCoeff();
  residual = std::max(residual, (k.transpose() * k - Matrix::Identity(m, m)).cwiseAbs().maxCoeff());
  Vector last = Vector::Zero(m);
  last[m - 1] = 1.0;
  residual = std::max(residual, (k.row(m - 1).transpose() - last).cwiseAbs().maxCoeff());
  residual = std::max(residual, (k.col(m - 1) - last).cwiseAbs().maxCoeff());

  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (residual > tol * scale) {
    throw std::runtime_error("NAK decomposition failed: residual above tolerance");
  }
  return {std::move(na), k, residual};
}

SoAlgebra::KnaDecomposition SoAlgebra::kna_decompose(const Matrix& g, double tol) const {
  // g = k q  <=>  g^{-1} = q^{-1} k^{-1} with q^{-1} in NA, so the NAK
  // factors of g^{-1} give k and, through the chart inverse, q.
  NakDecomposition inv = nak_decompose(group_inverse(g), tol);
  ChartPoint na{-inv.na.x / inv.na.y, 1.0 / inv.na.y};
  Matrix k = group_inverse(inv.k);
  double residual = (k * phi_matrix(*this, na) - g).cwiseAbs().maxCoeff();
  residual = std::max(residual, inv.residual);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (residual > tol * scale) {
    throw std::runtime_error("KNA decomposition failed: residual above tolerance");
  }
  return {std::move(k), std::move(na), residual};
}

IwasawaBasis iwasawa_basis(int n) { return SoAlgebra(n).iwasawa(); }

}  // namespace hquot
