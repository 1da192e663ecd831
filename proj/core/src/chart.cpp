#include "hquot/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace hquot {

Matrix phi(const SoAlgebra& alg, const ChartPoint& p) {
  check_chart_point(p);
  return alg.exp_nilpotent(p.x) * alg.exp_boost(std::log(p.y));
}

ChartPoint chart_inverse(const ChartPoint& p) {
  check_chart_point(p);
  return {-p.x / p.y, 1.0 / p.y};
}

ChartPoint tau(const ChartPoint& p) { return chart_inverse(p); }

Matrix embed_compact(const SoAlgebra& alg, const Matrix& R) {
  const int n = alg.rank();
  if (R.rows() != n || R.cols() != n) {
    throw std::invalid_argument("compact factor must be n x n");
  }
  Matrix k = Matrix::Identity(n + 1, n + 1);
  k.topLeftCorner(n, n) = R;
  return k;
}

Matrix rotation_z(const SoAlgebra& alg, double z) {
  return alg.exp_rotation(1, 2, -z);
}

ChartPoint r_action(const SoAlgebra& alg, const Matrix& k, const ChartPoint& p) {
  return alg.kna_decompose(phi(alg, p) * k).na;
}

ChartPoint l_action(const SoAlgebra& alg, const Matrix& k, const ChartPoint& p) {
  return alg.nak_decompose(k * phi(alg, p)).na;
}

ChartPoint r_action_closed_2d(double z, const ChartPoint& p) {
  check_chart_point(p);
  if (p.x.size() != 1) throw std::invalid_argument("closed action formula requires n = 2");
  const double x = p.x[0], y = p.y;
  const double c = std::cos(z), s = std::sin(z);
  const double q = -x * x + y * y - 1.0;
  Vector nx(1);
  nx[0] = (-q * s + 2.0 * x * y * c) / (2.0 * y);
  const double ny = (q * c + 2.0 * x * y * s + x * x + y * y + 1.0) / (2.0 * y);
  return {std::move(nx), ny};
}

ChartPoint l_action_closed_2d(double z, const ChartPoint& p) {
  check_chart_point(p);
  if (p.x.size() != 1) throw std::invalid_argument("closed action formula requires n = 2");
  const double x = p.x[0], y = p.y;
  const double c = std::cos(z), s = std::sin(z);
  const double q = x * x + y * y - 1.0;
  const double L = -q * c + 2.0 * x * s + x * x + y * y + 1.0;
  Vector nx(1);
  nx[0] = (q * s + 2.0 * x * c) / L;
  return {std::move(nx), 2.0 * y / L};
}

OrbitCircle orbit_circle(const ChartPoint& p) {
  check_chart_point(p);
  const double c = (1.0 + p.x.squaredNorm() + p.y * p.y) / (2.0 * p.y);
  const double dy = p.y - c;
  return {c, std::sqrt(p.x.squaredNorm() + dy * dy)};
}

bool stabilizer_check(const SoAlgebra& alg, const ChartPoint& p, const Matrix& k,
                      double tol) {
  check_chart_point(p);
  if (p.x.cwiseAbs().maxCoeff() > 0.0 || p.y == 1.0) {
    throw std::invalid_argument("stabilizer check is stated on the axis (0, y), y != 1");
  }
  const ChartPoint image = r_action(alg, k, p);
  const double moved = std::max((image.x - p.x).cwiseAbs().maxCoeff(),
                                std::abs(image.y - p.y));
  return moved <= tol;
}

}  // namespace hquot
