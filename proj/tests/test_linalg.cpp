#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "entrep/linalg.hpp"
#include "entrep/rng.hpp"

using namespace entrep;
using namespace entrep::linalg;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("svd identity and diagonal cases") {
  SvdResult s = svd(Matrix::Identity(3, 3));
  CHECK(max_abs(s.u - Matrix::Identity(3, 3)) < 1e-12);
  CHECK(max_abs(s.v - Matrix::Identity(3, 3)) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(s.sigma(i) == doctest::Approx(1.0));

  SvdResult d = svd(diag2(2.0, 0.0));
  CHECK(d.sigma(0) == doctest::Approx(2.0));
  CHECK(d.sigma(1) == doctest::Approx(0.0));
}

TEST_CASE("svd reconstruction on random 4x4") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_matrix(4, 4, rng);
    SvdResult s = svd(m);
    Matrix rec = s.u * s.sigma.asDiagonal() * s.v.adjoint();
    CHECK(max_abs(rec - m) < 1e-10 * std::max(1.0, max_abs(m)));
    CHECK(max_abs(s.u.adjoint() * s.u - Matrix::Identity(4, 4)) < 1e-10);
    CHECK(max_abs(s.v.adjoint() * s.v - Matrix::Identity(4, 4)) < 1e-10);
  }
}

TEST_CASE("svd rejects non-finite input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd(m), InvalidInputError);
}

TEST_CASE("svd deterministic convention makes first nonzero entry positive") {
  Rng rng(5);
  Matrix m = random_matrix(5, 5, rng);
  SvdResult s = svd(m);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      double mod = std::abs(s.u(i, j));
      if (mod > 1e-12) {
        CHECK(s.u(i, j).real() > 0.0);
        CHECK(std::abs(s.u(i, j).imag()) < 1e-10 * mod);
        break;
      }
    }
  }
}

TEST_CASE("polar decomposition identities") {
  Rng rng(7);
  Matrix g = random_matrix(3, 3, rng);
  Matrix p0 = g * g.adjoint() / 3.0;

  PolarResult r = polar_decompose(p0);
  CHECK(max_abs(r.w - Matrix::Identity(3, 3)) < 1e-9);
  CHECK(max_abs(r.p - p0) < 1e-9);

  Matrix w0 = random_unitary(3, rng);
  PolarResult ru = polar_decompose(w0);
  CHECK(max_abs(ru.w - w0) < 1e-9);
  CHECK(max_abs(ru.p - Matrix::Identity(3, 3)) < 1e-9);
}

TEST_CASE("polar of a nilpotent matrix follows the svd convention") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 2.0;
  PolarResult r = polar_decompose(m);
  CHECK(max_abs(r.w * r.p - m) < 1e-10);
  CHECK(max_abs(r.w.adjoint() * r.w - Matrix::Identity(2, 2)) < 1e-10);
  // Deterministic: recomputing gives bit-identical factors.
  PolarResult r2 = polar_decompose(m);
  CHECK(max_abs(r.w - r2.w) == 0.0);
}

TEST_CASE("polar rejects non-square input") {
  CHECK_THROWS_AS(polar_decompose(Matrix::Zero(2, 3)), InvalidInputError);
}

TEST_CASE("psd_sqrt examples and squaring oracle") {
  HermitianMatrix d(diag2(4.0, 9.0));
  Matrix root = psd_sqrt(d).mat();
  CHECK(max_abs(root - diag2(2.0, 3.0)) < 1e-10);

  HermitianMatrix id(Matrix::Identity(4, 4));
  CHECK(max_abs(psd_sqrt(id).mat() - Matrix::Identity(4, 4)) < 1e-12);

  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    Matrix rho = random_psd(6, rng);
    Matrix r = psd_sqrt(HermitianMatrix(rho)).mat();
    CHECK(max_abs(r * r - rho) < 1e-9);
    CHECK(min_eigenvalue(r) > -1e-10);
  }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
  CHECK_THROWS_AS(psd_sqrt(HermitianMatrix(diag2(1.0, -0.5))), NotPsdError);
}

TEST_CASE("spectral projector closed-interval rule") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 0.1;
  m(1, 1) = 1.0;
  m(2, 2) = 3.0;
  Matrix p = spectral_projector(HermitianMatrix(m), 0.5, 2.0).mat();
  Matrix expect = Matrix::Zero(3, 3);
  expect(1, 1) = 1.0;
  CHECK(max_abs(p - expect) < 1e-10);

  // Everything selected over an unbounded window.
  Matrix all = spectral_projector(HermitianMatrix(m),
                                  -std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity())
                   .mat();
  CHECK(max_abs(all - Matrix::Identity(3, 3)) < 1e-10);

  // Eigenvalue exactly at lo is included.
  Matrix b = diag2(0.5, 1.0);
  Matrix pb = spectral_projector(HermitianMatrix(b), 0.5, 0.75).mat();
  CHECK(pb(0, 0).real() == doctest::Approx(1.0));
  CHECK(pb(1, 1).real() == doctest::Approx(0.0));

  // Commutes with the input.
  Rng rng(3);
  Matrix h = random_psd(5, rng);
  Matrix ph = spectral_projector(HermitianMatrix(h), 0.2, 1.0).mat();
  CHECK(max_abs(ph * h - h * ph) < 1e-9);
}

TEST_CASE("rho seminorm examples and direct-formula oracle") {
  Rng rng(17);
  Matrix rho = random_density(4, rng);
  CHECK(rho_seminorm(Matrix::Identity(4, 4), HermitianMatrix(rho)) ==
        doctest::Approx(1.0).epsilon(1e-10));

  Matrix a = random_matrix(4, 4, rng);
  HermitianMatrix mixed(Matrix::Identity(4, 4) / 4.0);
  double lhs = rho_seminorm(a, mixed);
  double rhs = std::sqrt((a * a.adjoint()).trace().real() / 4.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

  // Direct evaluation through the psd_sqrt oracle.
  Matrix root = psd_sqrt(HermitianMatrix(rho)).mat();
  double direct =
      std::sqrt((a * root * a.adjoint() * root).trace().real());
  CHECK(rho_seminorm(a, HermitianMatrix(rho)) ==
        doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("rho seminorm rejects indefinite rho") {
  CHECK_THROWS_AS(rho_seminorm(Matrix::Identity(2, 2),
                               HermitianMatrix(diag2(1.0, -1.0))),
                  NotPsdError);
}

TEST_CASE("reconstruction residuals over 1000 random instances") {
  Rng rng(29);
  for (int t = 0; t < 1000; ++t) {
    Eigen::Index n = 1 + rng.integer(32);
    Matrix m = random_matrix(n, n, rng);
    SvdResult s = svd(m);
    CHECK(max_abs(s.u * s.sigma.asDiagonal() * s.v.adjoint() - m) <
          1e-9 * std::max(1.0, max_abs(m)));
    PolarResult pr = polar_decompose(m);
    CHECK(max_abs(pr.w * pr.p - m) < 1e-9 * std::max(1.0, max_abs(m)));
    Matrix rho = random_psd(n, rng);
    Matrix root = psd_sqrt(HermitianMatrix(rho)).mat();
    CHECK(max_abs(root * root - rho) < 1e-9 * std::max(1.0, max_abs(rho)));
  }
}

TEST_CASE("seminorm satisfies Cauchy-Schwarz on random triples") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    Eigen::Index n = 2 + rng.integer(6);
    Matrix a = random_matrix(n, n, rng);
    Matrix b = random_matrix(n, n, rng);
    Matrix rho = random_psd(n, rng);
    Matrix root = psd_sqrt(HermitianMatrix(rho)).mat();
    double lhs = std::abs(rho_inner(a, b, root));
    double rhs = rho_seminorm(a, HermitianMatrix(rho)) *
                 rho_seminorm(b, HermitianMatrix(rho));
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("operator Cauchy-Schwarz") {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    Eigen::Index n = 2 + rng.integer(6);
    Matrix a = random_matrix(n, n, rng);
    Matrix b = random_matrix(n, n, rng);
    Matrix btb = b.adjoint() * b;
    // b from a Ginibre draw is invertible almost surely.
    Matrix gap = a.adjoint() * a -
                 (a.adjoint() * b) * btb.inverse() * (b.adjoint() * a);
    CHECK(min_eigenvalue(0.5 * (gap + gap.adjoint().eval())) > -1e-9);
  }
}

TEST_CASE("projection sandwich bounds on random PSD triples") {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    Eigen::Index n = 2 + rng.integer(6);
    Matrix a = random_psd(n, rng);
    Matrix rho = random_density(n, rng);
    int rank = 1 + static_cast<int>(rng.integer(n));
    Matrix u = random_unitary(n, rng);
    Matrix pi = Matrix::Zero(n, n);
    for (int r = 0; r < rank; ++r) pi += u.col(r) * u.col(r).adjoint();

    Matrix comp = Matrix::Identity(n, n) - pi;
    double va = real_trace(a, rho);
    double vb = std::abs((comp * a * pi * rho).trace());
    double vc = (comp * a * comp * rho).trace().real();
    double sandwich = (pi * a * pi * rho).trace().real();
    CHECK(sandwich <= 2.0 * (va + vc) + 1e-9);
    CHECK(sandwich <= va + 2.0 * vb + 1e-9);
  }
}
