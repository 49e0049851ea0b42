#include "schatten/group.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace schatten {

namespace {

void require_element(const GroupElement& x, int n) {
  int prev = 0;
  for (int idx : x.support) {
    if (idx < 1 || idx > n) {
      throw precondition_error("generator index out of range");
    }
    if (idx <= prev) {
      throw precondition_error("support must be strictly increasing");
    }
    prev = idx;
  }
  if (x.sign_bit != 0 && x.sign_bit != 1) {
    throw precondition_error("sign bit must be 0 or 1");
  }
}

std::uint64_t support_mask(const GroupElement& x) {
  std::uint64_t mask = 0;
  for (int idx : x.support) mask |= std::uint64_t{1} << (idx - 1);
  return mask;
}

GroupElement element_from(std::uint64_t mask, int sign, int n) {
  GroupElement e;
  e.sign_bit = sign;
  for (int i = 1; i <= n; ++i) {
    if (mask & (std::uint64_t{1} << (i - 1))) e.support.push_back(i);
  }
  return e;
}

}  // namespace

GroupElement group_identity() { return GroupElement{}; }

GroupElement group_j() { return GroupElement{1, {}}; }

GroupElement group_generator(int i) {
  if (i < 1) throw precondition_error("generator index out of range");
  return GroupElement{0, {i}};
}

GroupElement group_multiply(const GroupElement& x, const GroupElement& y,
                            int n) {
  require_element(x, n);
  require_element(y, n);
  // Each generator of y moves left past every strictly larger generator of
  // x, picking up one J per crossing; equal generators then cancel.
  int crossings = 0;
  for (int b : y.support) {
    const auto it =
        std::upper_bound(x.support.begin(), x.support.end(), b);
    crossings += static_cast<int>(x.support.end() - it);
  }
  GroupElement out;
  out.sign_bit = (x.sign_bit ^ y.sign_bit ^ (crossings & 1));
  std::set_symmetric_difference(x.support.begin(), x.support.end(),
                                y.support.begin(), y.support.end(),
                                std::back_inserter(out.support));
  return out;
}

std::vector<GroupElement> enumerate_group(int n) {
  if (n < 1 || n > 62) {
    throw precondition_error("group size out of range");
  }
  std::vector<GroupElement> out;
  out.reserve(std::size_t{2} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int sign = 0; sign <= 1; ++sign) {
      out.push_back(element_from(mask, sign, n));
    }
  }
  return out;
}

Matrix phi(const ObservableFamily& fam, const GroupElement& x) {
  for (int idx : x.support) {
    if (idx > fam.n) {
      throw precondition_error("support exceeds family size");
    }
  }
  Matrix out = Matrix::Identity(fam.dim, fam.dim);
  if (x.sign_bit) out = -out;
  for (int idx : x.support) {
    out = out * fam.ops[idx - 1];
  }
  return out;
}

DefectReport homomorphism_defect(const ObservableFamily& fam, DefectMode mode,
                                 std::int64_t sample_count,
                                 std::uint64_t seed) {
  fam.validate();
  const int n = fam.n;
  DefectReport report;
  report.j_image_distance =
      normalized_frobenius(phi(fam, group_j()) -
                           Matrix::Identity(fam.dim, fam.dim));

  double sum = 0.0;
  auto record = [&](double defect) {
    report.eta_max = std::max(report.eta_max, defect);
    sum += defect;
    ++report.pairs_tested;
  };

  if (mode == DefectMode::kExhaustive) {
    if (n > 12) {
      throw precondition_error("too large, use sampled");
    }
    const std::vector<GroupElement> elements = enumerate_group(n);
    std::vector<Matrix> images;
    images.reserve(elements.size());
    for (const GroupElement& e : elements) images.push_back(phi(fam, e));
    auto index_of = [&](const GroupElement& e) {
      return 2 * support_mask(e) + static_cast<std::uint64_t>(e.sign_bit);
    };
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t b = 0; b < elements.size(); ++b) {
        const GroupElement prod =
            group_multiply(elements[a], elements[b], n);
        record(normalized_frobenius(images[a] * images[b] -
                                    images[index_of(prod)]));
      }
    }
  } else {
    if (sample_count < 1) {
      throw precondition_error("sample count must be positive");
    }
    std::mt19937_64 engine(seed);
    const std::uint64_t mask_range = std::uint64_t{1} << n;
    auto draw = [&] {
      const std::uint64_t mask = engine() % mask_range;
      const int sign = static_cast<int>(engine() & 1);
      return element_from(mask, sign, n);
    };
    for (std::int64_t t = 0; t < sample_count; ++t) {
      const GroupElement x = draw();
      const GroupElement y = draw();
      const GroupElement prod = group_multiply(x, y, n);
      record(normalized_frobenius(phi(fam, x) * phi(fam, y) - phi(fam, prod)));
    }
  }
  report.eta_mean = sum / static_cast<double>(report.pairs_tested);
  return report;
}

DimensionBound dimension_bound(int n, double eps, double c_small,
                               double big_c) {
  if (n < 2) {
    throw precondition_error("need n >= 2");
  }
  DimensionBound out;
  out.c_small = c_small;
  out.big_c = big_c;
  out.applicable = static_cast<double>(n) * n * eps <= c_small;
  const double rep_dim = std::ldexp(1.0, n / 2);
  out.bound =
      (1.0 - big_c * std::pow(static_cast<double>(n), 4) * eps * eps) * rep_dim;
  out.corollary_dim = rep_dim / 2.0;
  return out;
}

}  // namespace schatten
