#pragma once

#include "schatten/pointset.hpp"

#include <cstdint>
#include <vector>

namespace schatten {

/// Canonical form J^a x_{i_1} ... x_{i_k} of an element of the finitely
/// presented group with central involution J and generators x_1, ..., x_n
/// obeying x_i^2 = 1 and x_i x_j = J x_j x_i for i != j.
struct GroupElement {
  int sign_bit = 0;          // exponent of J, 0 or 1
  std::vector<int> support;  // strictly increasing, 1-based

  bool operator==(const GroupElement& other) const = default;
};

GroupElement group_identity();
GroupElement group_j();
GroupElement group_generator(int i);

/// Canonical product, with the J-parity obtained by merge-counting the
/// crossings needed to sort the concatenated supports.
GroupElement group_multiply(const GroupElement& x, const GroupElement& y,
                            int n);

/// All 2^{n+1} canonical forms, ordered by (support bitmask, sign).
std::vector<GroupElement> enumerate_group(int n);

/// phi(J^a x_{i_1}...x_{i_k}) = (-1)^a A_{i_1} ... A_{i_k}.
Matrix phi(const ObservableFamily& fam, const GroupElement& x);

enum class DefectMode { kExhaustive, kSampled };

struct DefectReport {
  double eta_max = 0.0;
  double eta_mean = 0.0;
  std::int64_t pairs_tested = 0;
  double j_image_distance = 0.0;  // ||phi(J) - Id||_f, 2 by construction

  bool j_image_hypothesis() const { return j_image_distance > 42.0 * eta_max; }
};

/// Homomorphism defect sup ||phi(xy) - phi(x) phi(y)||_f over all pairs
/// (exhaustive, gated at n <= 12) or over seeded random pairs.
DefectReport homomorphism_defect(const ObservableFamily& fam, DefectMode mode,
                                 std::int64_t sample_count = 0,
                                 std::uint64_t seed = 0);

struct DimensionBound {
  bool applicable = false;   // n^2 * eps <= c_small
  double bound = 0.0;        // (1 - big_c * n^4 * eps^2) * 2^{floor(n/2)}
  double corollary_dim = 0;  // 2^{floor(n/2) - 1}
  double c_small = 0.0;      // echoed caller constants
  double big_c = 0.0;
};

/// Statement-level dimension bound; the constants are caller-supplied and
/// always echoed back, never silently defaulted.
DimensionBound dimension_bound(int n, double eps, double c_small,
                               double big_c);

}  // namespace schatten
