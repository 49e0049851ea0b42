#include "schatten/embed.hpp"

#include "schatten/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace schatten {

namespace {

constexpr int kBatchesPerDoubling = 100;

std::vector<const Matrix*> labeled_points(const PointConfig& cfg) {
  std::vector<const Matrix*> pts;
  pts.push_back(&cfg.O);
  pts.push_back(&cfg.sigma);
  for (const Matrix& m : cfg.X) pts.push_back(&m);
  for (const Matrix& m : cfg.Y) pts.push_back(&m);
  return pts;
}

}  // namespace

VectorBatch near_orthogonal_vectors(int n, double delta, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw precondition_error("delta must lie in (0, 1)");
  }
  if (n < 1) {
    throw precondition_error("need at least one vector");
  }
  const double log_term = std::log(static_cast<double>(std::max(n, 2)));
  int dim = static_cast<int>(std::ceil(64.0 * log_term / (delta * delta)));
  const double bound = delta / 4.0;

  GaussianStream stream(seed);
  VectorBatch batch;
  int failures_at_dim = 0;
  while (true) {
    std::vector<Eigen::VectorXd> candidate(n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd v(dim);
      for (int k = 0; k < dim; ++k) v(k) = stream.next();
      candidate[i] = v / v.norm();
    }
    bool ok = true;
    for (int i = 0; ok && i < n; ++i) {
      for (int j = i + 1; ok && j < n; ++j) {
        ok = std::abs(candidate[i].dot(candidate[j])) <= bound;
      }
    }
    if (ok) {
      batch.vectors = std::move(candidate);
      batch.sample_dim = dim;
      return batch;
    }
    ++batch.retries;
    if (++failures_at_dim >= kBatchesPerDoubling) {
      failures_at_dim = 0;
      dim *= 2;
    }
  }
}

std::vector<Eigen::VectorXd> span_coordinates(
    const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) {
    throw precondition_error("need at least one vector");
  }
  const Eigen::Index k = vectors[0].size();
  const Eigen::Index n = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXd stacked(k, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vectors[i].size() != k) {
      throw precondition_error("dimension mismatch");
    }
    stacked.col(i) = vectors[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  const Eigen::Index rank = std::max<Eigen::Index>(qr.rank(), 1);
  const Eigen::MatrixXd basis =
      qr.householderQ() * Eigen::MatrixXd::Identity(k, rank);
  std::vector<Eigen::VectorXd> coords(vectors.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd c = basis.transpose() * vectors[i];
    coords[i] = c / c.norm();
  }
  return coords;
}

PointConfig jl_pointset(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) {
    throw precondition_error("need at least one vector");
  }
  const int k = static_cast<int>(vectors[0].size());
  for (const Eigen::VectorXd& v : vectors) {
    if (static_cast<int>(v.size()) != k) {
      throw precondition_error("dimension mismatch");
    }
    if (std::abs(v.norm() - 1.0) > 1e-9) {
      throw precondition_error("unit vector required");
    }
  }
  const ObservableFamily fam = real_clifford_family(k);
  const int d = fam.dim;
  const Matrix id = Matrix::Identity(d, d);

  PointConfig cfg;
  cfg.n = static_cast<int>(vectors.size());
  cfg.dim = d;
  cfg.O = Matrix::Zero(d, d);
  cfg.sigma = id / static_cast<double>(d);
  for (const Eigen::VectorXd& v : vectors) {
    Matrix a = Matrix::Zero(d, d);
    for (int j = 0; j < k; ++j) a += v(j) * fam.ops[j];
    cfg.X.push_back((id + a) / (2.0 * d));
    cfg.Y.push_back((id - a) / (2.0 * d));
  }
  return cfg;
}

double distortion(const PointConfig& source, const PointConfig& target) {
  if (source.n != target.n) {
    throw precondition_error("configurations must have matching n");
  }
  const std::vector<const Matrix*> src = labeled_points(source);
  const std::vector<const Matrix*> tgt = labeled_points(target);
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (std::size_t p = 0; p < src.size(); ++p) {
    for (std::size_t q = p + 1; q < src.size(); ++q) {
      const double ds = schatten1(*src[p] - *src[q]);
      if (ds == 0.0) {
        throw precondition_error("degenerate metric");
      }
      const double ratio = schatten1(*tgt[p] - *tgt[q]) / ds;
      if (first) {
        lo = hi = ratio;
        first = false;
      } else {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
  }
  return hi / lo;
}

std::pair<PointConfig, EmbedStats> embed(int n, double delta,
                                         std::uint64_t seed) {
  VectorBatch batch = near_orthogonal_vectors(n, delta, seed);
  const std::vector<Eigen::VectorXd> coords = span_coordinates(batch.vectors);

  PointConfig cfg = jl_pointset(coords);
  const double scale = 1.0 / (1.0 - delta / 4.0);
  cfg.sigma *= scale;
  for (Matrix& m : cfg.X) m *= scale;
  for (Matrix& m : cfg.Y) m *= scale;

  const PointConfig canonical = projector_pointset(clifford_family(n));

  EmbedStats stats;
  stats.n = n;
  stats.delta_target = delta;
  stats.vec_dim = batch.sample_dim;
  stats.span_dim = static_cast<int>(coords[0].size());
  stats.rep_dim = cfg.dim;
  stats.retries = batch.retries;
  stats.distortion = distortion(canonical, cfg);
  stats.sharper_bound = (1.0 + delta / 4.0) / (1.0 - delta / 4.0);
  stats.points_embedded = 2 * n + 2;
  return {std::move(cfg), stats};
}

}  // namespace schatten
