#include "hquot/algebra.hpp"
#include "hquot/chart.hpp"
#include "hquot/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace hquot;

namespace {

Matrix rotation_word(SplitMix64& rng, const SoAlgebra& alg, int length) {
  Matrix g = Matrix::Identity(alg.matrix_size(), alg.matrix_size());
  for (int w = 0; w < length; ++w) {
    switch (rng.below(3)) {
      case 0: {
        Vector x = Vector::Zero(alg.rank() - 1);
        x[static_cast<int>(rng.below(alg.rank() - 1))] = rng.uniform(-0.75, 0.75);
        g = g * alg.exp_nilpotent(x);
        break;
      }
      case 1:
        g = g * alg.exp_boost(rng.uniform(-0.75, 0.75));
        break;
      default:
        g = g * alg.exp_rotation(1, 2, rng.uniform(-3.0, 3.0));
        break;
    }
  }
  return g;
}

}  // namespace

TEST_CASE("basis elements match the displayed 3x3 matrices") {
  const SoAlgebra alg(2);

  Matrix e12(3, 3), e13(3, 3), e23(3, 3);
  e12 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  e13 << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  e23 << 0, 0, 0, 0, 0, 1, 0, 1, 0;

  CHECK((alg.basis_element(1, 2) - e12).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alg.basis_element(1, 3) - e13).cwiseAbs().maxCoeff() == 0.0);
  CHECK((alg.basis_element(2, 3) - e23).cwiseAbs().maxCoeff() == 0.0);

  // A_1 = E_{n,n+1} for every rank.
  for (int n = 2; n <= 5; ++n) {
    const SoAlgebra a(n);
    CHECK((a.boost_generator() - a.basis_element(n, n + 1)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("basis index preconditions") {
  const SoAlgebra alg(3);
  CHECK_THROWS_AS(alg.basis_element(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(alg.basis_element(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(alg.basis_element(1, 5), std::invalid_argument);
  CHECK_THROWS_AS(SoAlgebra(1), std::invalid_argument);
  CHECK_THROWS_AS(SoAlgebra(9), std::invalid_argument);
}

TEST_CASE("iwasawa basis for n = 2 agrees with N1 = E13 + E12") {
  const SoAlgebra alg(2);
  const IwasawaBasis b = iwasawa_basis(2);
  REQUIRE(b.nilpotent.size() == 1);
  CHECK((b.nilpotent[0] - (alg.basis_element(1, 3) + alg.basis_element(1, 2)))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  REQUIRE(b.compact.size() == 1);
  CHECK((b.compact[0] - alg.basis_element(1, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nilpotent generators are abelian and cube to zero") {
  for (int n = 2; n <= 6; ++n) {
    const IwasawaBasis b = iwasawa_basis(n);
    REQUIRE(static_cast<int>(b.nilpotent.size()) == n - 1);
    for (const Matrix& Ni : b.nilpotent) {
      CHECK((Ni * Ni * Ni).cwiseAbs().maxCoeff() == 0.0);
      for (const Matrix& Nj : b.nilpotent) {
        CHECK(bracket(Ni, Nj).cwiseAbs().maxCoeff() == 0.0);
        const Matrix anti = Ni * Nj + Nj * Ni;
        CHECK((anti * anti * anti).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
}

TEST_CASE("inner product declares the basis orthonormal") {
  const SoAlgebra alg(2);
  const Matrix E12 = alg.basis_element(1, 2);
  CHECK(alg.inner(E12, E12) == doctest::Approx(1.0).epsilon(1e-15));

  const Matrix N1 = alg.nilpotent_basis()[0];
  CHECK(alg.inner(N1, alg.boost_generator()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(alg.inner(N1, N1) == doctest::Approx(2.0).epsilon(1e-15));

  Matrix not_algebra = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(alg.inner(not_algebra, E12), std::domain_error);
}

TEST_CASE("exponential closed forms and generic path agree") {
  const SoAlgebra alg(2);
  CHECK((alg.exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  // e^{z(-E12)} is the rotation with cos z, sin z in the upper block.
  const double z = 0.37;
  Matrix rot(3, 3);
  rot << std::cos(z), std::sin(z), 0, -std::sin(z), std::cos(z), 0, 0, 0, 1;
  CHECK((alg.exp(-z * alg.basis_element(1, 2)) - rot).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((alg.exp_rotation(1, 2, -z) - rot).cwiseAbs().maxCoeff() < 1e-15);

  // e^{ln(y) A_1} carries the cosh/sinh block in the lower-right corner.
  const double y = 2.7;
  const Matrix boost = alg.exp_boost(std::log(y));
  CHECK(boost(0, 0) == 1.0);
  CHECK(boost(1, 1) == doctest::Approx(std::cosh(std::log(y))).epsilon(1e-15));
  CHECK(boost(2, 1) == doctest::Approx(std::sinh(std::log(y))).epsilon(1e-15));
  CHECK((boost - alg.exp(std::log(y) * alg.boost_generator())).cwiseAbs().maxCoeff() < 1e-13);

  SplitMix64 rng(7);
  for (int n = 2; n <= 5; ++n) {
    const SoAlgebra a(n);
    for (int c = 0; c < 50; ++c) {
      Vector coeff(a.dim());
      for (int i = 0; i < a.dim(); ++i) coeff[i] = rng.uniform(-1.0, 1.0);
      const Matrix g = a.exp(a.from_coefficients(coeff));
      CHECK(a.is_group_element(g));
    }
  }
}

TEST_CASE("coefficient expansion round-trips") {
  SplitMix64 rng(3);
  for (int n = 2; n <= 5; ++n) {
    const SoAlgebra alg(n);
    Vector c(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) c[i] = rng.uniform(-2.0, 2.0);
    const Matrix X = alg.from_coefficients(c);
    CHECK(alg.is_algebra_element(X));
    CHECK((alg.coefficients(X) - c).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("nak decomposition recovers chart point and compact factor") {
  const SoAlgebra alg(2);

  SUBCASE("identity") {
    const auto d = alg.nak_decompose(Matrix::Identity(3, 3));
    CHECK(d.na.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.na.x.cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.k - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("phi(1,2) times a rotation") {
    Vector x(1);
    x[0] = 1.0;
    const ChartPoint p{x, 2.0};
    const Matrix k = alg.exp_rotation(1, 2, -0.3);
    const auto d = alg.nak_decompose(phi(alg, p) * k);
    CHECK(std::abs(d.na.x[0] - 1.0) < 1e-12);
    CHECK(std::abs(d.na.y - 2.0) < 1e-12);
    CHECK((d.k - k).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(d.residual <= 1e-10);
  }

  SUBCASE("random words round-trip across ranks") {
    SplitMix64 rng(11);
    for (int n = 2; n <= 5; ++n) {
      const SoAlgebra a(n);
      for (int c = 0; c < 250; ++c) {
        const Matrix g = rotation_word(rng, a, 4);
        const auto d = a.nak_decompose(g);
        CHECK((phi(a, d.na) * d.k - g).cwiseAbs().maxCoeff() <= 1e-10);

        const auto e = a.kna_decompose(g);
        CHECK((e.k * phi(a, e.na) - g).cwiseAbs().maxCoeff() <= 1e-10);

        // Consistency between the two factorizations of the same element.
        CHECK((e.k * phi(a, e.na) - phi(a, d.na) * d.k).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }

  SUBCASE("rejects matrices outside the group") {
    Matrix junk = Matrix::Identity(3, 3);
    junk(0, 1) = 0.5;
    CHECK_THROWS_AS(alg.nak_decompose(junk), std::runtime_error);
  }
}

TEST_CASE("kna of a compact-times-chart product recovers both factors") {
  const SoAlgebra alg(2);
  Vector x(1);
  x[0] = -0.4;
  const ChartPoint p{x, 0.7};
  const Matrix k = alg.exp_rotation(1, 2, -1.1);
  const auto d = alg.kna_decompose(k * phi(alg, p));
  CHECK((d.k - k).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(d.na.x[0] - p.x[0]) < 1e-12);
  CHECK(std::abs(d.na.y - p.y) < 1e-12);
}

TEST_CASE("group membership checks") {
  const SoAlgebra alg(3);
  CHECK(alg.is_group_element(Matrix::Identity(4, 4)));
  CHECK(alg.is_group_element(alg.exp_boost(1.2)));
  // Orthochronous complement: flipping the time direction leaves the form
  // invariant but exits the identity component.
  Matrix flip = Matrix::Identity(4, 4);
  flip(2, 2) = -1.0;
  flip(3, 3) = -1.0;
  CHECK(!alg.is_group_element(flip));
}
