#pragma once

#include "schatten/linalg.hpp"

#include <cstdint>
#include <random>

namespace schatten {

/// Seeded Gaussian stream built from mt19937_64 plus an explicit Box-Muller
/// transform. std::normal_distribution is implementation-defined; this keeps
/// the value sequence a pure function of the seed.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Complex next_complex() {
    const double re = next();
    const double im = next();
    return Complex(re, im);
  }

 private:
  double uniform01() {
    // 53-bit uniform in (0, 1]; log() above needs a nonzero argument.
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// dim x dim matrix with independent complex standard Gaussian entries,
/// filled row-major so the layout is part of the determinism contract.
inline Matrix gaussian_matrix(int dim, GaussianStream& stream) {
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      g(r, c) = stream.next_complex();
    }
  }
  return g;
}

}  // namespace schatten
