// Copyright The structeig Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <unsupported/Eigen/Polynomials>

#include "support.hpp"

using namespace structeig;
using structeig::testing::Rng;

namespace {

// Characteristic polynomial coefficients (ascending powers, monic) by the
// Faddeev-LeVerrier recursion in extended precision.
std::vector<long double> char_poly(const RDense& a) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const Index n = a.rows();
  const LMat al = a.cast<long double>();
  std::vector<long double> c(size_t(n + 1), 0.0L);
  c[size_t(n)] = 1.0L;
  LMat m = LMat::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = al * m + c[size_t(n - k + 1)] * LMat::Identity(n, n);
    c[size_t(n - k)] = -(al * m).trace() / static_cast<long double>(k);
  }
  return c;
}

cplx polish_root(const std::vector<long double>& c, cplx z0) {
  using lc = std::complex<long double>;
  lc z(z0.real(), z0.imag());
  for (int it = 0; it < 20; ++it) {
    lc p = 0, dp = 0;
    for (size_t k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    if (std::abs(dp) == 0.0L) break;
    z -= p / dp;
  }
  return {double(z.real()), double(z.imag())};
}

}  // namespace

TEST_CASE("frobenius inner product") {
  const Matrix i2 = Matrix::identity(2);
  CHECK(frobenius_inner(i2, i2) == cplx(2.0, 0.0));

  CDense xi(1, 1);
  xi(0, 0) = cplx(0.0, 1.0);
  CHECK(std::abs(frobenius_inner(Matrix(xi), Matrix(xi)) - 1.0) < 1e-15);

  Rng rng(11);
  const CDense x = rng.cdense(3, 3);
  const CDense y = rng.cdense(3, 3);
  cplx oracle = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) oracle += std::conj(x(i, j)) * y(i, j);
  CHECK(std::abs(frobenius_inner(Matrix(x), Matrix(y)) - oracle) < 1e-14);

  // Mixed and sparse/sparse layouts agree with the dense value.
  const Matrix xs(CSparse(x.sparseView()));
  const Matrix ys(CSparse(y.sparseView()));
  CHECK(std::abs(frobenius_inner(xs, Matrix(y)) - oracle) < 1e-14);
  CHECK(std::abs(frobenius_inner(Matrix(x), ys) - oracle) < 1e-14);
  CHECK(std::abs(frobenius_inner(xs, ys) - oracle) < 1e-14);

  CHECK_THROWS_AS(frobenius_inner(Matrix::identity(2), Matrix::identity(3)), Error);
}

TEST_CASE("matrix layouts and arithmetic") {
  std::vector<Eigen::Triplet<cplx>> t = {{0, 0, 1.0}, {1, 1, 2.0}, {0, 0, 0.5}};
  const Matrix s = Matrix::from_triplets(2, 2, t);
  CHECK(s.is_sparse());
  CHECK(s.stored_entries() == 2);
  CHECK(s.to_dense()(0, 0) == cplx(1.5, 0.0));
  CHECK(s.is_real());
  CHECK_THROWS_AS(Matrix::from_triplets(2, 2, {{2, 0, 1.0}}), Error);

  const Matrix d(CDense::Ones(2, 2));
  const Matrix sum = axpby(2.0, s, 1.0, d);
  CHECK_FALSE(sum.is_sparse());
  CHECK(sum.to_dense()(1, 1) == cplx(5.0, 0.0));
  CHECK(axpby(1.0, s, -1.0, s).is_sparse());

  Rng rng(3);
  const CDense z = rng.cdense(3, 3);
  CHECK((Matrix(z).adjoint().to_dense() - z.adjoint()).norm() == 0.0);
  CHECK((Matrix(z).real_part().to_dense() - CDense(z.real().cast<cplx>())).norm() == 0.0);
  CHECK(std::abs(Matrix(z).frobenius_norm() - z.norm()) < 1e-14);
}

TEST_CASE("apply_perturbed") {
  Rng rng(5);
  const CDense a = rng.cdense(4, 4);
  const CVector p = rng.cvector(4);
  CHECK((apply_perturbed(Matrix(a), 0.7, Matrix::zeros(4, 4), p) - a * p).norm() < 1e-14);

  const CVector u = rng.unit_cvector(4);
  const CVector v = rng.unit_cvector(4);
  const Matrix e(CDense(u * v.adjoint()));
  CHECK((apply_perturbed(Matrix::zeros(4, 4), 1.0, e, v) - u).norm() < 1e-14);

  // Sparse A with a dense E against explicit materialization.
  const auto pat = rng.pattern(20, 0.2);
  const Matrix as = rng.real_on_pattern(20, pat);
  const CVector x = rng.unit_cvector(20);
  const CVector y = rng.unit_cvector(20);
  const Matrix ef(CDense(x * y.adjoint()));
  const CVector q = rng.cvector(20);
  const CVector oracle = (as.to_dense() + 0.3 * ef.to_dense()) * q;
  CHECK((apply_perturbed(as, 0.3, ef, q) - oracle).norm() < 1e-13 * oracle.norm());
}

TEST_CASE("target selection and tie breaking") {
  const std::vector<cplx> ev = {{-1.0, 2.0}, {-1.0, -2.0}, {-3.0, 0.0}, {0.5, 0.0}};
  CHECK(select_target(ev, TargetSelector::rightmost()) == 3);
  CHECK(select_target(ev, TargetSelector::leftmost()) == 2);
  CHECK(select_target(ev, TargetSelector::smallest_modulus()) == 3);
  CHECK(select_target(ev, TargetSelector::closest_to({-1.0, -1.9})) == 1);
  // Conjugate pair tie: larger imaginary part wins.
  const std::vector<cplx> pair = {{-1.0, -2.0}, {-1.0, 2.0}, {-5.0, 0.0}};
  CHECK(select_target(pair, TargetSelector::rightmost()) == 1);
  CHECK(select_target(pair, TargetSelector::largest_modulus()) == 2);
  CHECK_THROWS_AS(select_target({}, TargetSelector::rightmost()), Error);
}

TEST_CASE("eigentriplet of a diagonal matrix") {
  CDense d = CDense::Zero(2, 2);
  d(0, 0) = -1.0;
  d(1, 1) = -2.0;
  const Eigentriplet t = eigentriplet(Matrix(d), TargetSelector::rightmost());
  CHECK(std::abs(t.lambda - cplx(-1.0, 0.0)) < 1e-15);
  CHECK((t.x - unit_vector(2, 0)).norm() < 1e-15);
  CHECK((t.y - unit_vector(2, 0)).norm() < 1e-15);
  CHECK(std::abs(t.kappa - 1.0) < 1e-15);
  CHECK_FALSE(t.simplicity_warning);
}

TEST_CASE("defective target raises ill-conditioned") {
  CDense j = CDense::Zero(2, 2);
  j(0, 1) = 1.0;
  try {
    eigentriplet(Matrix(j), TargetSelector::rightmost());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIllConditioned);
  }
}

TEST_CASE("repeated eigenvalue sets the simplicity warning") {
  const Eigentriplet t = eigentriplet(Matrix::identity(3), TargetSelector::rightmost());
  CHECK(t.simplicity_warning);
}

TEST_CASE("eigentriplet residuals and normalization on random matrices") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const CDense m = rng.cdense(10, 10);
    for (auto sel : {TargetSelector::rightmost(), TargetSelector::leftmost(),
                     TargetSelector::largest_modulus(), TargetSelector::smallest_modulus(),
                     TargetSelector::closest_to({0.3, -0.2})}) {
      const Eigentriplet t = eigentriplet(Matrix(m), sel);
      CHECK((m * t.y - t.lambda * t.y).norm() < 1e-12 * m.norm());
      CHECK((t.x.adjoint() * m - t.lambda * t.x.adjoint()).norm() < 1e-12 * m.norm());
      CHECK(std::abs(t.x.norm() - 1.0) < 1e-14);
      CHECK(std::abs(t.y.norm() - 1.0) < 1e-14);
      const cplx xy = t.x.dot(t.y);
      CHECK(xy.real() > 0.0);
      CHECK(std::abs(xy.imag()) < 1e-14);
      CHECK(std::abs(t.kappa * xy.real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("smallest-modulus eigenvalue matches the characteristic polynomial roots") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const RDense m = rng.rdense(8, 8);
    const std::vector<long double> c = char_poly(m);
    Eigen::VectorXd coeffs(c.size());
    for (size_t k = 0; k < c.size(); ++k) coeffs[Index(k)] = double(c[k]);
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    cplx best(0.0, 0.0);
    double best_mod = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < solver.roots().size(); ++k) {
      const cplx z = polish_root(c, solver.roots()[k]);
      if (std::abs(z) < best_mod) {
        best_mod = std::abs(z);
        best = z;
      }
    }
    const Eigentriplet t =
        eigentriplet(Matrix(CDense(m.cast<cplx>())), TargetSelector::smallest_modulus());
    // Conjugate pairs tie in modulus; compare modulus and the conjugate class.
    CHECK(std::abs(std::abs(t.lambda) - best_mod) < 1e-8);
    CHECK(std::min(std::abs(t.lambda - best), std::abs(t.lambda - std::conj(best))) < 1e-8);
  }
}

TEST_CASE("normalize_eigenvector_pair phase convention") {
  Rng rng(29);
  CVector x = rng.unit_cvector(5);
  CVector y = rng.unit_cvector(5);
  const double overlap = normalize_eigenvector_pair(x, y);
  CHECK(std::abs(x.dot(y) - cplx(overlap, 0.0)) < 1e-14);
  Index k = 0;
  y.cwiseAbs().maxCoeff(&k);
  CHECK(y[k].real() > 0.0);
  CHECK(std::abs(y[k].imag()) < 1e-15);
}

TEST_CASE("sigma_min") {
  CDense d = CDense::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -0.25;
  d(2, 2) = cplx(0.0, 2.0);
  CHECK(std::abs(sigma_min(Matrix(d)) - 0.25) < 1e-15);
}

TEST_CASE("sparse backend agrees with the dense backend" * doctest::skip(!sparse_backend_available())) {
  Rng rng(31);
  const Index n = 80;
  const Matrix a = rng.real_on_pattern(n, rng.pattern(n, 0.08));
  EigenOptions sparse;
  sparse.backend = EigenBackend::kSparse;
  EigenOptions dense;
  dense.backend = EigenBackend::kDense;
  for (auto sel : {TargetSelector::rightmost(), TargetSelector::leftmost(),
                   TargetSelector::largest_modulus(), TargetSelector::smallest_modulus(),
                   TargetSelector::closest_to({0.1, 0.4})}) {
    const Eigentriplet ts = eigentriplet(a, sel, sparse);
    const Eigentriplet td = eigentriplet(a, sel, dense);
    CHECK(std::abs(ts.lambda - td.lambda) < 1e-10 * (1.0 + std::abs(td.lambda)));
    CHECK(std::abs(std::abs(ts.x.dot(td.x)) - 1.0) < 1e-8);
    CHECK(std::abs(std::abs(ts.y.dot(td.y)) - 1.0) < 1e-8);
    CHECK(std::abs(ts.kappa - td.kappa) < 1e-8 * td.kappa);
  }
}
