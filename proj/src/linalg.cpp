#include "entrep/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace entrep::linalg {

namespace {

constexpr double kPhaseTol = 1e-12;
constexpr double kTieTol = 1e-12;

// Multiplies column j of u and v by the phase that makes the first entry of
// u.col(j) with modulus above kPhaseTol real positive. M = U Σ V† is
// invariant because the columns are rotated by conjugate phases.
void fix_column_phase(Matrix& u, Matrix& v, Eigen::Index j) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    double mod = std::abs(u(i, j));
    if (mod > kPhaseTol) {
      Complex phase = std::conj(u(i, j)) / mod;
      u.col(j) *= phase;
      if (j < v.cols()) v.col(j) *= phase;
      return;
    }
  }
}

// Descending lexicographic order on column entries, so that for the
// identity matrix the convention is a fixed point.
bool column_lex_before(const Matrix& u, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Complex x = u(i, a), y = u(i, b);
    if (std::abs(x.real() - y.real()) > kTieTol) return x.real() > y.real();
    if (std::abs(x.imag() - y.imag()) > kTieTol) return x.imag() > y.imag();
  }
  return false;
}

}  // namespace

bool is_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void require_finite(const Matrix& m, const char* what) {
  if (!is_finite(m))
    throw InvalidInputError(std::string(what) + ": non-finite entries");
}

HermitianMatrix::HermitianMatrix(Matrix m, double tol) : m_(std::move(m)) {
  require_finite(m_, "HermitianMatrix");
  if (m_.rows() != m_.cols())
    throw InvalidInputError("HermitianMatrix: not square");
  if (m_.rows() < 1) throw InvalidInputError("HermitianMatrix: empty");
  double dev = max_abs(m_ - m_.adjoint());
  if (dev > tol)
    throw InvalidInputError("HermitianMatrix: |M - M^dag| = " +
                            std::to_string(dev) + " exceeds tolerance");
}

ProjectorMatrix::ProjectorMatrix(Matrix m, double tol) : m_(std::move(m)) {
  require_finite(m_, "ProjectorMatrix");
  if (m_.rows() != m_.cols())
    throw InvalidInputError("ProjectorMatrix: not square");
  double herm = max_abs(m_ - m_.adjoint());
  if (herm > kHermitTol)
    throw InvalidInputError("ProjectorMatrix: not Hermitian, deviation " +
                            std::to_string(herm));
  double idem = max_abs(m_ * m_ - m_);
  if (idem > tol)
    throw InvalidInputError("ProjectorMatrix: |P^2 - P| = " +
                            std::to_string(idem) + " exceeds tolerance");
}

SvdResult svd(const Matrix& m) {
  require_finite(m, "svd");
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = dec.matrixU();
  Matrix v = dec.matrixV();
  RealVector sigma = dec.singularValues();

  Eigen::Index n = std::min(u.cols(), v.cols());
  for (Eigen::Index j = 0; j < u.cols(); ++j) fix_column_phase(u, v, j);

  // Stable reorder inside groups of (numerically) equal singular values.
  double scale = sigma.size() > 0 ? std::max(sigma(0), 1.0) : 1.0;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && std::abs(sigma(end) - sigma(start)) <= kTieTol * scale)
      ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> order(end - start);
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(),
                       [&](Eigen::Index a, Eigen::Index b) {
                         return column_lex_before(u, a, b);
                       });
      Matrix ublock(u.rows(), end - start);
      Matrix vblock(v.rows(), end - start);
      for (Eigen::Index t = 0; t < end - start; ++t) {
        ublock.col(t) = u.col(order[t]);
        vblock.col(t) = v.col(order[t]);
      }
      u.block(0, start, u.rows(), end - start) = ublock;
      v.block(0, start, v.rows(), end - start) = vblock;
    }
    start = end;
  }
  return SvdResult{std::move(u), std::move(sigma), std::move(v)};
}

PolarResult polar_decompose(const Matrix& m) {
  if (m.rows() != m.cols())
    throw InvalidInputError("polar_decompose: matrix must be square");
  SvdResult s = svd(m);
  Matrix w = s.u * s.v.adjoint();
  Matrix p = s.v * s.sigma.asDiagonal() * s.v.adjoint();
  p = 0.5 * (p + p.adjoint().eval());
  return PolarResult{std::move(w), std::move(p)};
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m, double psd_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.mat());
  RealVector vals = eig.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -psd_tol)
      throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(vals(i)) +
                        " below -psd_tol");
    if (vals(i) < 0.0) vals(i) = 0.0;
  }
  Matrix root = eig.eigenvectors() *
                vals.cwiseSqrt().asDiagonal() *
                eig.eigenvectors().adjoint();
  root = 0.5 * (root + root.adjoint().eval());
  return HermitianMatrix(std::move(root));
}

ProjectorMatrix spectral_projector(const HermitianMatrix& m, double lo,
                                   double hi) {
  if (lo > hi) throw InvalidInputError("spectral_projector: lo > hi");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.mat());
  Matrix p = Matrix::Zero(m.dim(), m.dim());
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    double lambda = eig.eigenvalues()(i);
    if (lambda >= lo && lambda <= hi)
      p += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).adjoint();
  }
  p = 0.5 * (p + p.adjoint().eval());
  return ProjectorMatrix(std::move(p));
}

double rho_seminorm(const Matrix& a, const HermitianMatrix& rho,
                    double psd_tol) {
  if (a.rows() != rho.dim() || a.cols() != rho.dim())
    throw InvalidInputError("rho_seminorm: shape mismatch");
  Matrix root = psd_sqrt(rho, psd_tol).mat();
  Complex t = (a * root * a.adjoint() * root).trace();
  return std::sqrt(std::max(0.0, t.real()));
}

Complex rho_inner(const Matrix& a, const Matrix& b, const Matrix& sqrt_rho) {
  return (a * sqrt_rho * b.adjoint() * sqrt_rho).trace();
}

double real_trace(const Matrix& a, const Matrix& b) {
  return (a * b).trace().real();
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  Matrix g = random_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the output is Haar-distributed.
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double mod = std::abs(d);
    q.col(j) *= (mod > 0) ? d / mod : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_psd(Eigen::Index dim, Rng& rng) {
  Matrix g = random_matrix(dim, dim, rng);
  Matrix p = g * g.adjoint();
  return p / static_cast<double>(dim);
}

Matrix random_density(Eigen::Index dim, Rng& rng) {
  Matrix p = random_psd(dim, rng);
  return p / p.trace().real();
}

std::vector<Matrix> random_projective_measurement(Eigen::Index dim,
                                                  int outcomes, Rng& rng) {
  if (outcomes < 1 || dim < outcomes)
    throw InvalidInputError(
        "random_projective_measurement: need dim >= outcomes >= 1");
  Matrix u = random_unitary(dim, rng);
  std::vector<Matrix> ops(outcomes, Matrix::Zero(dim, dim));
  Eigen::Index base = dim / outcomes, extra = dim % outcomes;
  Eigen::Index col = 0;
  for (int a = 0; a < outcomes; ++a) {
    Eigen::Index rank = base + (a < extra ? 1 : 0);
    for (Eigen::Index r = 0; r < rank; ++r, ++col)
      ops[a] += u.col(col) * u.col(col).adjoint();
  }
  return ops;
}

}  // namespace entrep::linalg
