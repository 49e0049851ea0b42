#include "schatten/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace schatten {

namespace {

constexpr double kObjectiveFloor = 1e-14;

void require_state(const Matrix& sigma) {
  if (!is_hermitian(sigma)) {
    throw precondition_error("sigma must be Hermitian");
  }
  const SpectralDecomposition sd = spectral_decomposition(sigma);
  if (sd.eigenvalues.size() == 0 || sd.eigenvalues.minCoeff() < -1e-8) {
    throw precondition_error("sigma must be PSD");
  }
  if (std::abs(sigma.trace().real() - 1.0) > 1e-8) {
    throw precondition_error("sigma must have unit trace");
  }
}

void require_observable(const Matrix& a) {
  const Eigen::Index d = a.rows();
  if (!is_hermitian(a) ||
      (a * a - Matrix::Identity(d, d)).norm() > 1e-8 * static_cast<double>(d)) {
    throw precondition_error("observable required");
  }
}

Matrix positive_part(const Matrix& h) {
  return positive_negative_parts(hermitian_part(h)).first;
}

}  // namespace

PointConfig normalize_config(const PointConfig& cfg) {
  const double sep = schatten1(cfg.sigma - cfg.O);
  if (sep < 1e-6) {
    throw precondition_error("degenerate configuration");
  }
  const Matrix u_inv = polar_unitary(cfg.sigma - cfg.O).adjoint();
  PointConfig out;
  out.n = cfg.n;
  out.dim = cfg.dim;
  out.O = Matrix::Zero(cfg.dim, cfg.dim);
  Matrix sigma = u_inv * (cfg.sigma - cfg.O);  // = |sigma - O|, PSD
  const double trace = sigma.trace().real();
  out.sigma = sigma / trace;
  for (int i = 0; i < cfg.n; ++i) {
    out.X.push_back(u_inv * (cfg.X[i] - cfg.O) / trace);
    out.Y.push_back(u_inv * (cfg.Y[i] - cfg.O) / trace);
  }
  return out;
}

PairCertificate certify_pair(const Matrix& sigma, const Matrix& X,
                             const Matrix& Y) {
  require_state(sigma);
  const Eigen::Index d = sigma.rows();
  const Matrix sig = hermitian_part(sigma);
  const Matrix xh = hermitian_part(X);
  const Matrix yh = hermitian_part(Y);

  PairCertificate cert;
  cert.P = spectral_projector_nonneg(xh - yh);
  cert.Q = Matrix::Identity(d, d) - cert.P;
  // Blockwise positive parts keep rho commuting with P and Q exactly.
  cert.rho = positive_part(cert.P * xh * cert.P) +
             positive_part(cert.Q * (sig - xh) * cert.Q);

  const Matrix shalf = psd_sqrt(sig);
  cert.res_x = schatten1(X - shalf * cert.P * shalf);
  cert.res_y = schatten1(Y - shalf * cert.Q * shalf);
  cert.com_p = frobenius(commutator(cert.P, shalf));
  cert.com_q = frobenius(commutator(cert.Q, shalf));
  cert.rho_dist = schatten1(cert.rho - sig);
  return cert;
}

double anticommutation_residual(const Matrix& sigma, const Matrix& A,
                                const Matrix& B) {
  require_state(sigma);
  require_observable(A);
  require_observable(B);
  return frobenius(anti_commutator(A, B) * psd_sqrt(hermitian_part(sigma)));
}

Matrix select_block(const Matrix& sigma, const std::vector<Matrix>& T_list,
                    const std::vector<Matrix>& X_list) {
  require_state(sigma);
  if (T_list.empty() || X_list.empty()) {
    throw precondition_error("empty operator lists");
  }
  const Matrix shalf = psd_sqrt(hermitian_part(sigma));

  double eps = 0.0;
  for (const Matrix& t : T_list) {
    const double r = frobenius(t * shalf);
    eps += r * r;
  }
  eps /= static_cast<double>(T_list.size());
  double del = 0.0;
  for (const Matrix& x : X_list) {
    const double r = frobenius(commutator(x, shalf));
    del += r * r;
  }
  del /= static_cast<double>(X_list.size());

  const double eps_floor = std::max(eps, kObjectiveFloor);
  const double del_floor = std::max(std::sqrt(del), kObjectiveFloor);

  const SpectralDecomposition sd = spectral_decomposition(shalf);
  const double merge_tol =
      1e-12 * std::max(sd.eigenvalues(0), 1e-300);

  // Candidate thresholds sit at each distinct positive eigenvalue; the
  // candidate at the largest eigenvalue is always nonempty.
  Matrix best;
  double best_score = 0.0;
  double best_r1 = 0.0;
  double best_r2 = 0.0;
  bool have_best = false;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    if (sd.eigenvalues(k) <= 0.0) break;
    const bool distinct = k + 1 == sd.eigenvalues.size() ||
                          sd.eigenvalues(k) - sd.eigenvalues(k + 1) > merge_tol;
    if (!distinct) continue;
    const Matrix v = sd.eigenvectors.leftCols(k + 1);
    const Matrix r = hermitian_part(v * v.adjoint());
    const double trace_r = static_cast<double>(k + 1);
    double r1 = 0.0;
    for (const Matrix& t : T_list) {
      const double f = frobenius(t * r);
      r1 += f * f;
    }
    r1 /= static_cast<double>(T_list.size()) * trace_r;
    double r2 = 0.0;
    for (const Matrix& x : X_list) {
      const double f = frobenius(commutator(x, r));
      r2 += f * f;
    }
    r2 /= static_cast<double>(X_list.size()) * trace_r;
    const double score = std::max(r1 / eps_floor, r2 / del_floor);
    if (!have_best || score < best_score) {
      have_best = true;
      best_score = score;
      best_r1 = r1;
      best_r2 = r2;
      best = r;
    }
  }
  if (!have_best) {
    throw precondition_error("sigma has no positive spectrum");
  }
  if (best_r1 > 4.0 * eps_floor || best_r2 > 4.0 * del_floor) {
    std::fprintf(stderr,
                 "warning: select_block factor-4 guarantee exceeded "
                 "(r1=%.3e eps=%.3e r2=%.3e sqrt(del)=%.3e)\n",
                 best_r1, eps_floor, best_r2, del_floor);
  }
  return best;
}

ObservableFamily round_observables(const Matrix& R,
                                   const std::vector<Matrix>& A_list) {
  if (!is_hermitian(R) || frobenius(R * R - R) > 1e-8) {
    throw precondition_error("projector required");
  }
  const Eigen::Index d = R.rows();
  const SpectralDecomposition sd = spectral_decomposition(R);
  Eigen::Index rank = 0;
  while (rank < d && sd.eigenvalues(rank) > 0.5) ++rank;
  if (rank == 0) {
    throw precondition_error("projector must have positive rank");
  }
  // Full-rank projector is the identity; keep the identity isometry so
  // rounding preserves exact inputs verbatim.
  const Matrix isometry =
      rank == d ? Matrix(Matrix::Identity(d, d)) : Matrix(sd.eigenvectors.leftCols(rank));

  ObservableFamily fam;
  fam.n = static_cast<int>(A_list.size());
  fam.dim = static_cast<int>(rank);
  for (const Matrix& a : A_list) {
    const Matrix compressed =
        hermitian_part(isometry.adjoint() * a * isometry);
    fam.ops.push_back(matrix_sign(compressed));
  }
  return fam;
}

CertificationReport certify_config(const PointConfig& cfg) {
  if (cfg.n < 2) {
    throw precondition_error("need at least two pairs");
  }
  CertificationReport report;
  report.n = cfg.n;
  report.dim = cfg.dim;
  report.input_delta = verify_metric_relations(cfg).delta_observed;
  report.bound_rhs_shape =
      static_cast<double>(cfg.n) * cfg.n * std::pow(report.input_delta, 1.0 / 32.0);

  const PointConfig norm = normalize_config(cfg);
  const Matrix shalf = psd_sqrt(hermitian_part(norm.sigma));

  std::vector<Matrix> observables;
  for (int i = 0; i < norm.n; ++i) {
    report.pairs.push_back(certify_pair(norm.sigma, norm.X[i], norm.Y[i]));
    observables.push_back(report.pairs.back().P - report.pairs.back().Q);
    report.commutation.push_back(
        frobenius(commutator(observables.back(), shalf)));
  }

  report.pre_block_ac = Eigen::MatrixXd::Zero(norm.n, norm.n);
  std::vector<Matrix> anticommutators;
  for (int i = 0; i < norm.n; ++i) {
    for (int j = i + 1; j < norm.n; ++j) {
      anticommutators.push_back(anti_commutator(observables[i], observables[j]));
      report.pre_block_ac(i, j) =
          anticommutation_residual(norm.sigma, observables[i], observables[j]);
    }
  }

  const Matrix block = select_block(norm.sigma, anticommutators, observables);
  report.block_dim = static_cast<int>(std::lround(block.trace().real()));
  report.block_trace_fraction = block.trace().real() / norm.dim;

  const ObservableFamily rounded = round_observables(block, observables);
  double sum = 0.0;
  for (int i = 0; i < rounded.n; ++i) {
    for (int j = i + 1; j < rounded.n; ++j) {
      const double f =
          normalized_frobenius(anti_commutator(rounded.ops[i], rounded.ops[j]));
      sum += f * f;
    }
  }
  report.final_ac_mean_sq =
      2.0 * sum / (static_cast<double>(rounded.n) * (rounded.n - 1));
  return report;
}

}  // namespace schatten
