#pragma once

#include "schatten/pointset.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace schatten {

struct EmbedStats {
  int n = 0;
  double delta_target = 0.0;
  int vec_dim = 0;          // sampling dimension of the random-vector step
  int span_dim = 0;         // dimension of the span coordinates actually used
  int rep_dim = 0;          // 2^{ceil(span_dim/2) + 1}
  double distortion = 0.0;
  int retries = 0;          // rejected sampling batches
  double sharper_bound = 0.0;  // (1 + delta/4) / (1 - delta/4)
  int points_embedded = 0;     // 2n + 2
};

struct VectorBatch {
  std::vector<Eigen::VectorXd> vectors;
  int sample_dim = 0;
  int retries = 0;
};

/// n unit vectors with pairwise |x_i . x_j| <= delta/4, produced by seeded
/// Gaussian sampling with whole-batch rejection. The dimension starts at
/// ceil(64 ln(max(n,2)) / delta^2) and doubles after 100 rejected batches.
VectorBatch near_orthogonal_vectors(int n, double delta, std::uint64_t seed);

/// Re-expresses vectors in an orthonormal basis of their span. Inner
/// products are preserved exactly; the output dimension is the rank.
std::vector<Eigen::VectorXd> span_coordinates(
    const std::vector<Eigen::VectorXd>& vectors);

/// Point configuration of the reflections A_i = sum_j (x_i)_j C_j over the
/// real anticommuting family on the vectors' dimension.
PointConfig jl_pointset(const std::vector<Eigen::VectorXd>& vectors);

/// max/min ratio of target-to-source Schatten-1 distances over all pairs of
/// the 2n+2 labeled points.
double distortion(const PointConfig& source, const PointConfig& target);

/// Samples near-orthogonal vectors, compresses them to their span, builds
/// the reflection configuration, applies the (1 - delta/4)^{-1} scaling, and
/// measures distortion against the canonical configuration.
std::pair<PointConfig, EmbedStats> embed(int n, double delta,
                                         std::uint64_t seed);

}  // namespace schatten
