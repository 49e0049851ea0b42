#pragma once

#include "schatten/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace schatten {

/// Family of Hermitian involutions on a common dimension.
struct ObservableFamily {
  int n = 0;
  int dim = 0;
  std::vector<Matrix> ops;

  /// Throws precondition_error when an op is not Hermitian to 1e-10*dim or
  /// not an involution to 1e-9*dim, or when dimensions disagree.
  void validate() const;
};

/// The (2n+2)-point configuration {O, sigma, X_1, Y_1, ..., X_n, Y_n}.
/// The canonical construction stores points pre-scaled by 1/dim:
/// O = 0, sigma = Id/dim, X_i = P_{i,+}/dim, Y_i = P_{i,-}/dim.
struct PointConfig {
  int n = 0;
  int dim = 0;
  Matrix O;
  Matrix sigma;
  std::vector<Matrix> X;
  std::vector<Matrix> Y;
};

struct MetricConstraint {
  std::string id;
  double value = 0.0;
  double bound = 0.0;         // the bound at delta = 0
  double slack = 0.0;         // signed; >= 0 means satisfied at delta = 0
  double delta_needed = 0.0;  // smallest delta making this constraint hold
};

struct MetricReport {
  double delta_observed = 0.0;  // max of delta_needed over all constraints
  std::vector<MetricConstraint> constraints;
  int pairs_checked = 0;
  bool sampled = false;
};

enum class PairMode { kAll, kSampled };

/// n pairwise-anticommuting observables of dimension 2^{ceil(n/2)}: the
/// first n operators of the even-size Pauli-tensor construction on
/// ceil(n/2) qubits. All anticommutators vanish identically.
ObservableFamily clifford_family(int n);

/// Real-entried variant: operators at odd positions are tensored with Id,
/// at even positions with Y, doubling the dimension.
ObservableFamily real_clifford_family(int n);

/// Eigenprojector point set of a family: O = 0, sigma = Id/d,
/// X_i = (Id + C_i)/(2d), Y_i = (Id - C_i)/(2d).
PointConfig projector_pointset(const ObservableFamily& fam);

/// Evaluates every hypothesis constraint on the configuration and reports
/// the smallest admissible delta plus per-constraint slack. kSampled checks
/// a deterministic subset of at most 4n cross pairs.
MetricReport verify_metric_relations(const PointConfig& cfg,
                                     PairMode mode = PairMode::kAll);

/// Adds to each of sigma, X_i, Y_i an independent complex Gaussian matrix
/// rescaled to Schatten-1 norm delta/8. Deterministic given the seed; the
/// perturbed configuration verifies with delta_observed <= delta.
PointConfig perturb_pointset(const PointConfig& cfg, double delta,
                             std::uint64_t seed);

}  // namespace schatten
