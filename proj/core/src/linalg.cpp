#include "schatten/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace schatten {

namespace {

void require_square_nonempty(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw precondition_error("empty operator");
  }
  if (a.rows() != a.cols()) {
    throw precondition_error("operator must be square");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw precondition_error("dimension mismatch");
  }
}

Eigen::VectorXd singular_values(const Matrix& a) {
  // Jacobi is accurate and fast enough below ~32; divide-and-conquer above.
  if (a.rows() <= 32) {
    return Eigen::JacobiSVD<Matrix>(a).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(a).singularValues();
}

}  // namespace

double schatten1(const Matrix& a) {
  require_square_nonempty(a);
  return singular_values(a).sum();
}

double frobenius(const Matrix& a) {
  require_square_nonempty(a);
  return a.norm();
}

double normalized_frobenius(const Matrix& a) {
  return frobenius(a) / std::sqrt(static_cast<double>(a.rows()));
}

double operator_norm(const Matrix& a) {
  require_square_nonempty(a);
  return singular_values(a)(0);
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * (1.0 + a.norm());
}

Matrix hermitian_part(const Matrix& a) {
  require_square_nonempty(a);
  return (a + a.adjoint()) / 2.0;
}

SpectralDecomposition spectral_decomposition(const Matrix& h) {
  require_square_nonempty(h);
  if (!is_hermitian(h)) {
    throw precondition_error("hermitian required");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw precondition_error("eigendecomposition failed");
  }
  const Eigen::Index d = h.rows();
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = Matrix(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.eigenvectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return out;
}

std::pair<Matrix, Matrix> positive_negative_parts(const Matrix& h) {
  const SpectralDecomposition sd = spectral_decomposition(h);
  const Eigen::VectorXd pos = sd.eigenvalues.cwiseMax(0.0);
  const Eigen::VectorXd neg = (-sd.eigenvalues).cwiseMax(0.0);
  Matrix hp = sd.eigenvectors * pos.asDiagonal() * sd.eigenvectors.adjoint();
  Matrix hn = sd.eigenvectors * neg.asDiagonal() * sd.eigenvectors.adjoint();
  return {hermitian_part(hp), hermitian_part(hn)};
}

Matrix spectral_projector_nonneg(const Matrix& h) {
  const SpectralDecomposition sd = spectral_decomposition(h);
  const double scale = sd.eigenvalues.size() > 0
                           ? sd.eigenvalues.cwiseAbs().maxCoeff()
                           : 0.0;
  const double tol = 1e-10 * scale;
  Eigen::Index count = 0;
  while (count < sd.eigenvalues.size() && sd.eigenvalues(count) >= -tol) {
    ++count;
  }
  const Matrix v = sd.eigenvectors.leftCols(count);
  return hermitian_part(v * v.adjoint());
}

Matrix threshold_projector(const Matrix& s, double a) {
  if (a < 0.0) {
    throw precondition_error("threshold must be nonnegative");
  }
  const SpectralDecomposition sd = spectral_decomposition(s);
  const double scale =
      std::max(1.0, sd.eigenvalues.size() > 0
                        ? sd.eigenvalues.cwiseAbs().maxCoeff()
                        : 0.0);
  Eigen::Index count = 0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    // Clip round-off negatives so a = 0 selects the whole PSD spectrum.
    double lam = sd.eigenvalues(k);
    if (lam < 0.0 && lam >= -1e-12 * scale) lam = 0.0;
    if (lam >= a) count = k + 1;
  }
  const Matrix v = sd.eigenvectors.leftCols(count);
  return hermitian_part(v * v.adjoint());
}

Matrix psd_sqrt(const Matrix& s) {
  const SpectralDecomposition sd = spectral_decomposition(s);
  const double scale = sd.eigenvalues.size() > 0
                           ? sd.eigenvalues.cwiseAbs().maxCoeff()
                           : 0.0;
  Eigen::VectorXd lam = sd.eigenvalues;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) < -1e-6 * scale) {
      throw precondition_error("not PSD");
    }
    lam(k) = std::sqrt(std::max(lam(k), 0.0));
  }
  return hermitian_part(sd.eigenvectors * lam.asDiagonal() *
                        sd.eigenvectors.adjoint());
}

Matrix polar_unitary(const Matrix& a) {
  require_square_nonempty(a);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix matrix_sign(const Matrix& h) {
  const SpectralDecomposition sd = spectral_decomposition(h);
  const double scale = sd.eigenvalues.size() > 0
                           ? sd.eigenvalues.cwiseAbs().maxCoeff()
                           : 0.0;
  const double tol = 1e-10 * scale;
  Eigen::VectorXd sign(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < sign.size(); ++k) {
    sign(k) = sd.eigenvalues(k) >= -tol ? 1.0 : -1.0;
  }
  return hermitian_part(sd.eigenvectors * sign.asDiagonal() *
                        sd.eigenvectors.adjoint());
}

Matrix anti_commutator(const Matrix& a, const Matrix& b) {
  require_square_nonempty(a);
  require_same_dim(a, b);
  return a * b + b * a;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square_nonempty(a);
  require_same_dim(a, b);
  return a * b - b * a;
}

}  // namespace schatten
