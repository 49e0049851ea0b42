#include "schatten/linalg.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace schatten {
namespace {

using testing::jacobi_singular_values;
using testing::oracle_schatten1;
using testing::random_complex;
using testing::random_hermitian;
using testing::random_psd;
using testing::random_state;

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix diag(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(entries.size(), entries.size());
  Eigen::Index k = 0;
  for (double v : entries) m(k, k) = v, ++k;
  return m;
}

const Matrix kNilpotent = mat2(0, 1, 0, 0);

TEST(Schatten1, SingleUnitSingularValue) {
  EXPECT_NEAR(schatten1(kNilpotent), 1.0, 1e-12);
}

TEST(Schatten1, RankOnePsd) {
  EXPECT_NEAR(schatten1(mat2(1, 1, 1, 1)), 2.0, 1e-12);
}

TEST(Schatten1, EmptyOperatorRejected) {
  EXPECT_THROW(schatten1(Matrix(0, 0)), precondition_error);
  EXPECT_THROW(schatten1(Matrix(2, 3)), precondition_error);
}

TEST(Schatten1, MatchesIndependentSvdOracle) {
  GaussianStream rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_complex(8, rng);
    EXPECT_NEAR(schatten1(a), oracle_schatten1(a), 1e-10);
  }
}

TEST(Frobenius, IdentityAndNormalization) {
  const Matrix id4 = Matrix::Identity(4, 4);
  EXPECT_NEAR(frobenius(id4), 2.0, 1e-14);
  EXPECT_NEAR(normalized_frobenius(id4), 1.0, 1e-14);
  EXPECT_NEAR(frobenius(kNilpotent), 1.0, 1e-14);
}

TEST(Frobenius, SquareEqualsGramTrace) {
  GaussianStream rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_complex(6, rng);
    const double f = frobenius(a);
    EXPECT_NEAR(f * f, (a.adjoint() * a).trace().real(), 1e-10);
  }
}

TEST(OperatorNorm, Examples) {
  EXPECT_NEAR(operator_norm(diag({1, -3, 2})), 3.0, 1e-12);
  EXPECT_NEAR(operator_norm(Matrix::Identity(5, 5)), 1.0, 1e-12);
  GaussianStream rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_complex(8, rng);
    EXPECT_NEAR(operator_norm(a), testing::oracle_operator_norm(a), 1e-10);
  }
}

TEST(HermitianPart, Examples) {
  const Matrix h = hermitian_part(kNilpotent);
  EXPECT_NEAR(std::abs(h(0, 1) - Complex(0.5, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(1, 0) - Complex(0.5, 0)), 0.0, 1e-15);
  EXPECT_EQ((h - h.adjoint()).norm(), 0.0);  // Hermitian to the last bit

  GaussianStream rng(14);
  const Matrix fixed = random_hermitian(5, rng);
  EXPECT_NEAR((hermitian_part(fixed) - fixed).norm(), 0.0, 1e-14);
}

// Any X obeying the sum constraint at its observed parameter delta is within
// 3 sqrt(delta) of its Hermitian part in nuclear norm.
TEST(HermitianPart, NuclearDistanceBound) {
  GaussianStream rng(15);
  const int d = 4;
  const Matrix sigma = Matrix::Identity(d, d) / d;
  Matrix base = Matrix::Zero(d, d);
  base(0, 0) = base(1, 1) = 1.0 / d;  // an eigenprojector point of sigma
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix noise = random_complex(d, rng);
    const Matrix x = base + noise * (1e-4 / schatten1(noise));
    const double delta_eff =
        std::max(0.0, schatten1(x) + schatten1(sigma - x) - 1.0);
    EXPECT_LE(schatten1(x - hermitian_part(x)),
              3.0 * std::sqrt(delta_eff) + 1e-10);
  }
}

TEST(PositiveNegativeParts, DiagonalExample) {
  const auto [pos, neg] = positive_negative_parts(diag({2, -3}));
  EXPECT_NEAR((pos - diag({2, 0})).norm(), 0.0, 1e-12);
  EXPECT_NEAR((neg - diag({0, 3})).norm(), 0.0, 1e-12);
}

TEST(PositiveNegativeParts, PsdFixedPoint) {
  GaussianStream rng(16);
  const Matrix s = random_psd(5, rng);
  const auto [pos, neg] = positive_negative_parts(s);
  EXPECT_NEAR((pos - s).norm(), 0.0, 1e-9 * 5);
  EXPECT_NEAR(neg.norm(), 0.0, 1e-9 * 5);
}

TEST(PositiveNegativeParts, NuclearNormSplits) {
  GaussianStream rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix h = random_hermitian(6, rng);
    const auto [pos, neg] = positive_negative_parts(h);
    EXPECT_NEAR(schatten1(pos) + schatten1(neg), schatten1(h), 1e-9);
    EXPECT_NEAR((pos - neg - h).norm(), 0.0, 1e-9 * 6);
    EXPECT_NEAR((pos * neg).norm(), 0.0, 1e-9 * 6);
  }
}

TEST(PositiveNegativeParts, RejectsNonHermitian) {
  EXPECT_THROW(positive_negative_parts(kNilpotent), precondition_error);
}

TEST(SpectralProjector, Examples) {
  EXPECT_NEAR((spectral_projector_nonneg(diag({1, -1})) - diag({1, 0})).norm(),
              0.0, 1e-12);
  // Zero eigenvalues go to the positive side.
  EXPECT_NEAR(
      (spectral_projector_nonneg(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3))
          .norm(),
      0.0, 1e-12);
}

TEST(SpectralProjector, PauliDifferenceHasRootTwoTopEigenvalue) {
  const Matrix z = mat2(1, 0, 0, -1);
  const Matrix y = mat2(0, Complex(0, 1), Complex(0, -1), 0);
  const Matrix h = z - y;
  const Matrix p = spectral_projector_nonneg(h);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);  // rank one
  EXPECT_NEAR((p * p - p).norm(), 0.0, 1e-12);
  // P H P = ||H||_inf P, so its sole nonzero eigenvalue is sqrt(2).
  EXPECT_NEAR((p * h * p - std::sqrt(2.0) * p).norm(), 0.0, 1e-12);
}

TEST(ThresholdProjector, Examples) {
  EXPECT_NEAR((threshold_projector(diag({0.8, 0.6}), 0.7) - diag({1, 0})).norm(),
              0.0, 1e-12);
  GaussianStream rng(18);
  const Matrix s = random_psd(4, rng);
  EXPECT_NEAR((threshold_projector(s, 0.0) - Matrix::Identity(4, 4)).norm(),
              0.0, 1e-10);
  EXPECT_THROW(threshold_projector(s, -0.1), precondition_error);
}

// Finite spectral sum realizing the layer-cake identity: integrating the
// threshold projectors of rho over a recovers rho^2.
TEST(ThresholdProjector, LayerCakeIdentity) {
  GaussianStream rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 11;
    const Matrix rho = random_psd(d, rng);
    const SpectralDecomposition sd = spectral_decomposition(rho);
    Matrix sum = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double hi = sd.eigenvalues(k);
      const double lo = k + 1 < d ? sd.eigenvalues(k + 1) : 0.0;
      if (hi <= lo) continue;
      const double mid = 0.5 * (hi + lo);
      sum += (hi * hi - lo * lo) * threshold_projector(rho, mid);
    }
    EXPECT_NEAR((sum - rho * rho).norm(), 0.0, 1e-9);
  }
}

TEST(PsdSqrt, Examples) {
  EXPECT_NEAR((psd_sqrt(diag({4, 9})) - diag({2, 3})).norm(), 0.0, 1e-12);
  EXPECT_NEAR((psd_sqrt(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm(),
              0.0, 1e-12);
  EXPECT_THROW(psd_sqrt(diag({1, -1})), precondition_error);
}

TEST(PsdSqrt, SquareRecoversInput) {
  GaussianStream rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix s = random_psd(6, rng);
    const Matrix r = psd_sqrt(s);
    EXPECT_NEAR((r * r - s).norm(), 0.0, 1e-9 * 6 * s.norm());
  }
}

TEST(PsdSqrt, PowersStormer) {
  GaussianStream rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    const Matrix r = random_psd(d, rng);
    const Matrix s = random_psd(d, rng);
    EXPECT_LE(frobenius(psd_sqrt(r) - psd_sqrt(s)),
              std::sqrt(schatten1(r - s)) + 1e-10);
  }
}

TEST(PolarUnitary, Examples) {
  EXPECT_NEAR((polar_unitary(diag({-1, 2})) - diag({-1, 1})).norm(), 0.0,
              1e-12);
  GaussianStream rng(22);
  const Matrix g = random_complex(4, rng);
  const Matrix u = polar_unitary(g);  // unitary factor of a generic matrix
  EXPECT_NEAR((u * u.adjoint() - Matrix::Identity(4, 4)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((polar_unitary(u) - u).norm(), 0.0, 1e-12);
}

TEST(PolarUnitary, SingularCompletion) {
  const Matrix a = diag({0, 2});
  const Matrix u = polar_unitary(a);
  EXPECT_NEAR((u * u.adjoint() - Matrix::Identity(2, 2)).norm(), 0.0, 1e-12);
  const Matrix abs_a = psd_sqrt(a.adjoint() * a);
  EXPECT_NEAR((u * abs_a - a).norm(), 0.0, 1e-12);
  EXPECT_NEAR((u - Matrix::Identity(2, 2)).norm(), 0.0, 1e-12);
}

TEST(PolarUnitary, ReconstructsInput) {
  GaussianStream rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_complex(5, rng);
    const Matrix u = polar_unitary(a);
    EXPECT_NEAR((u * psd_sqrt(hermitian_part(a.adjoint() * a)) - a).norm(), 0.0,
                1e-9 * a.norm());
  }
}

TEST(MatrixSign, Examples) {
  EXPECT_NEAR((matrix_sign(diag({0.5, -0.3, 0})) - diag({1, -1, 1})).norm(),
              0.0, 1e-12);
  GaussianStream rng(24);
  const Matrix a = testing::random_observable(6, 3, rng);
  EXPECT_NEAR((matrix_sign(a) - a).norm(), 0.0, 1e-12);
  EXPECT_THROW(matrix_sign(kNilpotent), precondition_error);
}

TEST(MatrixSign, SignBoundOnContractions) {
  GaussianStream rng(25);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    Matrix h = random_hermitian(d, rng);
    h /= std::max(operator_norm(h), 1e-30);  // spectrum inside [-1, 1]
    EXPECT_LE(frobenius(matrix_sign(h) - h),
              frobenius(h * h - Matrix::Identity(d, d)) + 1e-10);
  }
}

TEST(Commutators, Examples) {
  const Matrix z = mat2(1, 0, 0, -1);
  const Matrix y = mat2(0, Complex(0, 1), Complex(0, -1), 0);
  EXPECT_NEAR(anti_commutator(z, y).norm(), 0.0, 1e-15);
  EXPECT_NEAR((anti_commutator(z, z) - 2.0 * Matrix::Identity(2, 2)).norm(),
              0.0, 1e-15);
  EXPECT_NEAR(commutator(y, y).norm(), 0.0, 1e-15);
  EXPECT_THROW(anti_commutator(z, Matrix::Identity(3, 3)), precondition_error);
}

// --- norm inequality property suites ----------------------------------------

TEST(NormInequalities, CauchySchwarz) {
  GaussianStream rng(26);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    const Matrix a = random_complex(d, rng);
    const Matrix b = random_complex(d, rng);
    EXPECT_LE(schatten1(a * b), frobenius(a) * frobenius(b) + 1e-10);
  }
}

TEST(NormInequalities, Submultiplicativity) {
  GaussianStream rng(27);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    const Matrix a = random_complex(d, rng);
    const Matrix b = random_complex(d, rng);
    EXPECT_LE(schatten1(a * b), operator_norm(a) * schatten1(b) + 1e-10);
  }
}

// Near-equality in Cauchy-Schwarz forces near-proportionality: whenever
// Re Tr(A*B) >= (1 - delta) ||A||_F ||B||_F, ||A - alpha B||_F is at most
// sqrt(2 delta) ||A||_F for alpha = ||A||_F / ||B||_F.
TEST(NormInequalities, CauchySchwarzEqualityStability) {
  GaussianStream rng(28);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    const Matrix b = random_complex(d, rng);
    const Matrix noise = random_complex(d, rng);
    const Matrix a = b + noise * (0.05 * (trial % 7));
    const double corr = (a.adjoint() * b).trace().real();
    const double delta_eff =
        std::max(0.0, 1.0 - corr / (frobenius(a) * frobenius(b)));
    const double alpha = frobenius(a) / frobenius(b);
    EXPECT_LE(frobenius(a - alpha * b),
              std::sqrt(2.0 * delta_eff) * frobenius(a) + 1e-10);
  }
}

// Near-tightness of ||sigma^{1/2} R sigma^{1/2}||_1 <= sqrt(Tr(R^2 sigma))
// pins R^2 to a multiple of the identity on the support of sigma.
TEST(NormInequalities, TightTraceNormForcesFlatSquare) {
  GaussianStream rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 7;
    const Matrix sigma = random_state(d, rng);
    Matrix r;
    if (trial % 2 == 0) {
      r = random_hermitian(d, rng);
    } else {
      // Near-tight instance: an observable plus a small Hermitian bump.
      r = testing::random_observable(d, d / 2 + 1, rng) +
          1e-3 * random_hermitian(d, rng);
    }
    const Matrix shalf = psd_sqrt(sigma);
    const double mu = (r * r * sigma).trace().real();
    if (mu < 1e-12) continue;
    const double tight = schatten1(shalf * r * shalf) / std::sqrt(mu);
    const double delta_eff = std::max(0.0, 1.0 - tight);
    const double lhs =
        std::pow(frobenius((r * r - mu * Matrix::Identity(d, d)) * shalf), 2);
    const double op = operator_norm(r);
    EXPECT_LE(lhs, 8.0 * std::sqrt(delta_eff) * op * op * mu + 1e-10);
  }
}

TEST(SpectralDecompositionChecks, ReconstructionAndOrthonormality) {
  GaussianStream rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 15;
    const Matrix h = random_hermitian(d, rng);
    const SpectralDecomposition sd = spectral_decomposition(h);
    for (Eigen::Index k = 0; k + 1 < d; ++k) {
      EXPECT_GE(sd.eigenvalues(k), sd.eigenvalues(k + 1));
    }
    const Matrix recon = sd.eigenvectors * sd.eigenvalues.asDiagonal() *
                         sd.eigenvectors.adjoint();
    EXPECT_NEAR((recon - h).norm(), 0.0, 1e-10 * d);
    EXPECT_NEAR(
        (sd.eigenvectors.adjoint() * sd.eigenvectors - Matrix::Identity(d, d))
            .norm(),
        0.0, 1e-10 * d);
  }
}

TEST(ProjectorOutputs, IdempotentAndHermitian) {
  GaussianStream rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 10;
    const Matrix h = random_hermitian(d, rng);
    for (const Matrix& p : {spectral_projector_nonneg(h),
                            threshold_projector(random_psd(d, rng), 0.5)}) {
      EXPECT_NEAR((p * p - p).norm(), 0.0, 1e-10 * d);
      EXPECT_NEAR((p - p.adjoint()).norm(), 0.0, 1e-10 * d);
    }
  }
}

}  // namespace
}  // namespace schatten
