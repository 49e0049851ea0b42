#pragma once

#include "schatten/pointset.hpp"

#include <vector>

namespace schatten {

/// Per-pair output of the projection-extraction step: a resolution of the
/// identity (P, Q), the block-diagonal state rho, and the residual norms
/// measuring how well the pair realizes it.
struct PairCertificate {
  Matrix P;
  Matrix Q;
  Matrix rho;
  double res_x = 0.0;     // ||X - sigma^{1/2} P sigma^{1/2}||_1
  double res_y = 0.0;     // ||Y - sigma^{1/2} Q sigma^{1/2}||_1
  double com_p = 0.0;     // ||[P, sigma^{1/2}]||_F
  double com_q = 0.0;     // ||[Q, sigma^{1/2}]||_F
  double rho_dist = 0.0;  // ||rho - sigma||_1
};

struct CertificationReport {
  int n = 0;
  int dim = 0;
  double input_delta = 0.0;
  std::vector<PairCertificate> pairs;
  std::vector<double> commutation;   // per i: ||[A_i, sigma^{1/2}]||_F
  Eigen::MatrixXd pre_block_ac;      // (i, j), i < j: ||{A_i, A_j} sigma^{1/2}||_F
  int block_dim = 0;
  double block_trace_fraction = 0.0;
  double final_ac_mean_sq = 0.0;     // (2/n(n-1)) sum_{i<j} ||{A'_i, A'_j}||_f^2
  double bound_rhs_shape = 0.0;      // n^2 * input_delta^{1/32}, for context
};

/// Moves O to zero, rotates sigma positive semidefinite by the inverse polar
/// unitary, and rescales so sigma has unit trace. Throws when
/// ||sigma - O||_1 < 1e-6 ("degenerate configuration").
PointConfig normalize_config(const PointConfig& cfg);

/// Extracts the resolution of the identity for one (X, Y) pair against a
/// PSD trace-one sigma: P projects on the nonnegative eigenspace of
/// X_h - Y_h, rho is the positive part of P X_h P + Q (sigma - X_h) Q.
/// Residuals are reported raw, never thresholded.
PairCertificate certify_pair(const Matrix& sigma, const Matrix& X,
                             const Matrix& Y);

/// ||{A, B} sigma^{1/2}||_F for observables A, B.
double anticommutation_residual(const Matrix& sigma, const Matrix& A,
                                const Matrix& B);

/// Chooses the spectral threshold projector R of sigma^{1/2} minimizing the
/// worst normalized residual ratio over the distinct-eigenvalue candidates.
/// Ties break toward larger eigenvalues. The winner is checked against the
/// factor-4 averaging guarantee; a violation logs a warning to stderr.
Matrix select_block(const Matrix& sigma, const std::vector<Matrix>& T_list,
                    const std::vector<Matrix>& X_list);

/// Compresses each observable to the range of the projector R and rounds it
/// back to an exact observable via the matrix sign function.
ObservableFamily round_observables(const Matrix& R,
                                   const std::vector<Matrix>& A_list);

/// Full pipeline: verify, normalize, extract pairs, measure anticommutation
/// and commutation residuals, select a block, round, and report.
CertificationReport certify_config(const PointConfig& cfg);

}  // namespace schatten
