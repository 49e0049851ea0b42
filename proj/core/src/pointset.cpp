#include "schatten/pointset.hpp"

#include "schatten/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace schatten {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

Matrix pauli_x() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Pauli string Q_1 tensor ... tensor Q_m, one factor per qubit.
Matrix pauli_string(const std::vector<char>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (char f : factors) {
    switch (f) {
      case 'X':
        out = kron(out, pauli_x());
        break;
      case 'Y':
        out = kron(out, pauli_y());
        break;
      case 'Z':
        out = kron(out, pauli_z());
        break;
      default:
        out = kron(out, Matrix::Identity(2, 2));
        break;
    }
  }
  return out;
}

void require_config(const PointConfig& cfg) {
  if (cfg.n < 0 || cfg.dim < 1) {
    throw precondition_error("malformed configuration");
  }
  auto check = [&](const Matrix& m) {
    if (m.rows() != cfg.dim || m.cols() != cfg.dim) {
      throw precondition_error("dimension mismatch");
    }
  };
  check(cfg.O);
  check(cfg.sigma);
  if (static_cast<int>(cfg.X.size()) != cfg.n ||
      static_cast<int>(cfg.Y.size()) != cfg.n) {
    throw precondition_error("dimension mismatch");
  }
  for (const Matrix& m : cfg.X) check(m);
  for (const Matrix& m : cfg.Y) check(m);
}

struct ConstraintBuilder {
  std::vector<MetricConstraint> rows;

  // Two-sided: value must lie in [bound - delta, bound + delta].
  void bracket(std::string id, double value, double bound) {
    MetricConstraint c;
    c.id = std::move(id);
    c.value = value;
    c.bound = bound;
    c.slack = -std::abs(value - bound);
    c.delta_needed = std::abs(value - bound);
    rows.push_back(std::move(c));
  }

  // value <= bound + delta.
  void upper(std::string id, double value, double bound) {
    MetricConstraint c;
    c.id = std::move(id);
    c.value = value;
    c.bound = bound;
    c.slack = bound - value;
    c.delta_needed = std::max(0.0, value - bound);
    rows.push_back(std::move(c));
  }

  // value >= bound * (1 - delta) when scaled, or bound - delta when not.
  void lower(std::string id, double value, double bound, bool scaled) {
    MetricConstraint c;
    c.id = std::move(id);
    c.value = value;
    c.bound = bound;
    c.slack = value - bound;
    c.delta_needed =
        scaled ? std::max(0.0, 1.0 - value / bound) : std::max(0.0, bound - value);
    rows.push_back(std::move(c));
  }
};

}  // namespace

void ObservableFamily::validate() const {
  if (n < 1 || static_cast<int>(ops.size()) != n) {
    throw precondition_error("malformed observable family");
  }
  const Matrix id = Matrix::Identity(dim, dim);
  for (const Matrix& op : ops) {
    if (op.rows() != dim || op.cols() != dim) {
      throw precondition_error("dimension mismatch");
    }
    if ((op - op.adjoint()).norm() > 1e-10 * dim) {
      throw precondition_error("observable required");
    }
    if ((op * op - id).norm() > 1e-9 * dim) {
      throw precondition_error("observable required");
    }
  }
}

ObservableFamily clifford_family(int n) {
  if (n < 1) {
    throw precondition_error("family size must be positive");
  }
  const int qubits = (n + 1) / 2;
  ObservableFamily fam;
  fam.n = n;
  fam.dim = 1 << qubits;
  for (int idx = 1; idx <= n; ++idx) {
    const int slot = (idx + 1) / 2;  // 1-based qubit carrying Z or Y
    std::vector<char> factors(qubits, 'I');
    for (int q = 0; q < slot - 1; ++q) factors[q] = 'X';
    factors[slot - 1] = (idx % 2 == 1) ? 'Z' : 'Y';
    fam.ops.push_back(pauli_string(factors));
  }
  return fam;
}

ObservableFamily real_clifford_family(int n) {
  const ObservableFamily base = clifford_family(n);
  ObservableFamily fam;
  fam.n = n;
  fam.dim = 2 * base.dim;
  for (int idx = 1; idx <= n; ++idx) {
    const Matrix& c = base.ops[idx - 1];
    fam.ops.push_back(idx % 2 == 1 ? kron(c, Matrix::Identity(2, 2))
                                   : kron(c, pauli_y()));
  }
  return fam;
}

PointConfig projector_pointset(const ObservableFamily& fam) {
  fam.validate();
  const int d = fam.dim;
  const Matrix id = Matrix::Identity(d, d);
  PointConfig cfg;
  cfg.n = fam.n;
  cfg.dim = d;
  cfg.O = Matrix::Zero(d, d);
  cfg.sigma = id / static_cast<double>(d);
  for (const Matrix& c : fam.ops) {
    cfg.X.push_back((id + c) / (2.0 * d));
    cfg.Y.push_back((id - c) / (2.0 * d));
  }
  return cfg;
}

MetricReport verify_metric_relations(const PointConfig& cfg, PairMode mode) {
  require_config(cfg);
  ConstraintBuilder b;

  b.bracket("sigma_norm", schatten1(cfg.sigma - cfg.O), 1.0);
  for (int i = 0; i < cfg.n; ++i) {
    const std::string tag = std::to_string(i + 1);
    b.upper("x_sum_" + tag,
            schatten1(cfg.X[i] - cfg.O) + schatten1(cfg.sigma - cfg.X[i]), 1.0);
    b.upper("y_sum_" + tag,
            schatten1(cfg.Y[i] - cfg.O) + schatten1(cfg.sigma - cfg.Y[i]), 1.0);
    b.lower("xy_gap_" + tag, schatten1(cfg.X[i] - cfg.Y[i]), 1.0, false);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = i + 1; j < cfg.n; ++j) pairs.emplace_back(i, j);
  }
  bool sampled = false;
  const std::size_t cap = 4 * static_cast<std::size_t>(std::max(cfg.n, 1));
  if (mode == PairMode::kSampled && pairs.size() > cap) {
    std::mt19937_64 engine(0x5eed);
    std::shuffle(pairs.begin(), pairs.end(), engine);
    pairs.resize(cap);
    std::sort(pairs.begin(), pairs.end());
    sampled = true;
  }
  for (const auto& [i, j] : pairs) {
    const double v = std::min(
        std::min(schatten1(cfg.X[i] - cfg.X[j]), schatten1(cfg.X[i] - cfg.Y[j])),
        std::min(schatten1(cfg.Y[i] - cfg.X[j]), schatten1(cfg.Y[i] - cfg.Y[j])));
    b.lower("cross_min_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
            v, kSqrtHalf, true);
  }

  MetricReport report;
  report.constraints = std::move(b.rows);
  report.pairs_checked = static_cast<int>(pairs.size());
  report.sampled = sampled;
  for (const MetricConstraint& c : report.constraints) {
    report.delta_observed = std::max(report.delta_observed, c.delta_needed);
  }
  return report;
}

PointConfig perturb_pointset(const PointConfig& cfg, double delta,
                             std::uint64_t seed) {
  require_config(cfg);
  if (delta < 0.0 || delta > 1.0) {
    throw precondition_error("delta must lie in [0, 1]");
  }
  PointConfig out = cfg;
  if (delta == 0.0) {
    return out;
  }
  GaussianStream stream(seed);
  auto bump = [&](Matrix& m) {
    Matrix g = gaussian_matrix(cfg.dim, stream);
    m += g * (delta / 8.0 / schatten1(g));
  };
  bump(out.sigma);
  for (Matrix& m : out.X) bump(m);
  for (Matrix& m : out.Y) bump(m);
  return out;
}

}  // namespace schatten
