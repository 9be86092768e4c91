#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "entrep/errors.hpp"
#include "entrep/rng.hpp"

namespace entrep::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitTol = 1e-10;
inline constexpr double kProjTol = 1e-9;
inline constexpr double kPsdTol = 1e-10;

bool is_finite(const Matrix& m);
double max_abs(const Matrix& m);
void require_finite(const Matrix& m, const char* what);

// Hermitian matrix, validated at construction: max|M - M†| <= tol.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m, double tol = kHermitTol);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// Orthogonal projector, validated at construction: Hermitian within
// kHermitTol and max|P^2 - P| <= tol.
class ProjectorMatrix {
 public:
  explicit ProjectorMatrix(Matrix m, double tol = kProjTol);
  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct SvdResult {
  Matrix u;
  RealVector sigma;  // descending
  Matrix v;
};

// Full SVD M = U diag(sigma) V† with a deterministic convention: singular
// values sorted descending, the first nonzero component of each left
// singular vector made real positive, and ties between equal singular
// values broken by lexicographic order of the U columns.
SvdResult svd(const Matrix& m);

struct PolarResult {
  Matrix w;  // unitary
  Matrix p;  // PSD
};

// M = W P with W = U V† and P = V diag(sigma) V† from svd(M). For singular
// M the null directions of W follow the SVD convention, so the output is
// deterministic.
PolarResult polar_decompose(const Matrix& m);

// Principal square root of a PSD matrix. Eigenvalues in [-psd_tol, 0) are
// clamped to zero; anything below -psd_tol raises NotPsdError.
HermitianMatrix psd_sqrt(const HermitianMatrix& m, double psd_tol = kPsdTol);

// Projector onto the span of eigenvectors of m with eigenvalue in the
// closed interval [lo, hi].
ProjectorMatrix spectral_projector(const HermitianMatrix& m, double lo,
                                   double hi);

// ||A||_rho = sqrt(Tr(A rho^{1/2} A† rho^{1/2})).
double rho_seminorm(const Matrix& a, const HermitianMatrix& rho,
                    double psd_tol = kPsdTol);

// Tr(A sqrt_rho B† sqrt_rho) -- the semi-inner product underlying the
// rho-seminorm, with the square root precomputed by the caller.
Complex rho_inner(const Matrix& a, const Matrix& b, const Matrix& sqrt_rho);

// Real part of Tr(A B), clamped only by numerics.
double real_trace(const Matrix& a, const Matrix& b);

// Random helpers shared across the library and its tests.
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, entrep::Rng& rng);
Matrix random_unitary(Eigen::Index dim, entrep::Rng& rng);
Matrix random_psd(Eigen::Index dim, entrep::Rng& rng);
Matrix random_density(Eigen::Index dim, entrep::Rng& rng);  // PSD, trace 1
// Random projective measurement: `outcomes` pairwise-orthogonal projectors
// summing to the identity, with ranks as balanced as possible.
std::vector<Matrix> random_projective_measurement(Eigen::Index dim,
                                                  int outcomes,
                                                  entrep::Rng& rng);

}  // namespace entrep::linalg
