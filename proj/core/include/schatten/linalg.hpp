#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace schatten {

/// Dense complex square matrix; the carrier for every operator in the toolkit.
using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// A numerical precondition was violated (CLI exit code 3).
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A file could not be read, written, or parsed (CLI exit code 2).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensystem of a Hermitian matrix, eigenvalues sorted descending.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;  // unitary; column k pairs with eigenvalues[k]
};

/// Schatten-1 (nuclear) norm: sum of singular values.
double schatten1(const Matrix& a);

/// Frobenius norm and its dimension-normalized variant d^{-1/2}||.||_F.
double frobenius(const Matrix& a);
double normalized_frobenius(const Matrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// Scale-aware Hermiticity test: ||A - A*||_F <= tol * (1 + ||A||_F).
bool is_hermitian(const Matrix& a, double tol = 1e-9);

/// (A + A*)/2; the result is Hermitian to the last bit.
Matrix hermitian_part(const Matrix& a);

/// Eigensystem of a Hermitian matrix. Input is re-symmetrized before
/// factoring; throws precondition_error if not Hermitian to tolerance.
SpectralDecomposition spectral_decomposition(const Matrix& h);

/// Jordan decomposition H = H+ - H- with H+, H- PSD and H+ H- = 0.
std::pair<Matrix, Matrix> positive_negative_parts(const Matrix& h);

/// Orthogonal projector onto the span of eigenvectors with eigenvalue > 0.
/// Eigenvalues in [-tol, 0] with tol = 1e-10 * ||H||_inf count as positive,
/// so the zero matrix maps to the identity.
Matrix spectral_projector_nonneg(const Matrix& h);

/// Projector onto eigenspaces of a PSD matrix with eigenvalue >= a.
Matrix threshold_projector(const Matrix& s, double a);

/// PSD square root. Eigenvalues in [-1e-6 * ||S||_inf, 0) are clipped to 0;
/// anything below that bound raises precondition_error.
Matrix psd_sqrt(const Matrix& s);

/// Unitary factor U of the polar decomposition A = U (A*A)^{1/2}, via the
/// full-SVD completion U = W V* when A is singular.
Matrix polar_unitary(const Matrix& a);

/// Hermitian involution with the same eigenvectors as H; eigenvalues map to
/// +1 when >= -tol (tol = 1e-10 * ||H||_inf) and -1 otherwise.
Matrix matrix_sign(const Matrix& h);

Matrix anti_commutator(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace schatten
