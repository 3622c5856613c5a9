#ifndef RIPLAB_RIPCERT_HPP
#define RIPLAB_RIPCERT_HPP

#include <Eigen/SVD>
#include <cstdint>
#include <optional>

#include "riplab/distortion.hpp"
#include "riplab/rng.hpp"
#include "riplab/spectral.hpp"

namespace riplab {

enum class RipMode { exact, sampled };

struct RipEstimate {
  double p = 2.0;
  Index k = 0;
  RipMode mode = RipMode::sampled;
  double min_ratio = 0.0;  // candidate K
  double max_ratio = 0.0;  // candidate D*K
  double ratio_bound = 0.0;  // D = max_ratio / min_ratio
  std::uint64_t probes = 0;
  std::uint64_t seed = 0;
  bool not_rip = false;  // exact mode: some k columns linearly dependent
};

inline std::uint64_t binomial_capped(Index n, Index k, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (Index i = 0; i < k; ++i) {
    c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    if (c > cap) return cap + 1;
  }
  return c;
}

// Visit all k-subsets of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_support(Index n, Index k, Fn&& fn) {
  IndexSet support(static_cast<std::size_t>(k));
  std::iota(support.begin(), support.end(), Index{0});
  while (true) {
    fn(const_cast<const IndexSet&>(support));
    Index i = k - 1;
    while (i >= 0 && support[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++support[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Exact l2 RIP bracket: extreme singular values of A_S over all supports of
// size k. A is (k, max/min)-l2-RIP with no smaller ratio.
inline RipEstimate rip_exact_l2(const Matrix& a, Index k,
                                std::uint64_t cap = 2'000'000) {
  if (k < 1 || k > a.cols()) throw std::domain_error("rip_exact_l2: k out of range");
  if (binomial_capped(a.cols(), k, cap) > cap) {
    throw BudgetError("rip_exact_l2: C(n,k) exceeds the enumeration cap");
  }
  RipEstimate est;
  est.p = 2.0;
  est.k = k;
  est.mode = RipMode::exact;
  est.min_ratio = std::numeric_limits<double>::infinity();
  est.max_ratio = 0.0;
  for_each_support(a.cols(), k, [&](const IndexSet& support) {
    const Matrix sub = keep_cols(a, support);
    Eigen::JacobiSVD<Matrix> svd(sub);
    const auto& sigma = svd.singularValues();
    est.max_ratio = std::max(est.max_ratio, sigma[0]);
    est.min_ratio = std::min(est.min_ratio, sigma[sigma.size() - 1]);
    ++est.probes;
  });
  if (est.min_ratio <= rank_tolerance(est.max_ratio * est.max_ratio)) {
    est.not_rip = true;
    est.ratio_bound = std::numeric_limits<double>::infinity();
  } else {
    est.ratio_bound = est.max_ratio / est.min_ratio;
  }
  return est;
}

inline Vector random_sparse_gaussian(Index n, Index k, SplitMix64& rng) {
  // reservoir-free support draw: partial Fisher-Yates over index pool
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  Vector x = Vector::Zero(n);
  for (Index r = 0; r < k; ++r) {
    const auto pick = static_cast<std::size_t>(r) +
                      static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(n - r)));
    std::swap(pool[static_cast<std::size_t>(r)], pool[pick]);
    x[pool[static_cast<std::size_t>(r)]] = rng.next_gaussian();
  }
  return x;
}

// Monte Carlo lower bound on D for arbitrary p: coordinate probes plus
// seeded random k-sparse Gaussian probes. Never overshoots the true D.
inline RipEstimate rip_sampled(const Matrix& a, Index k, double p,
                               std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("rip_sampled: trials must be >= 1");
  if (k < 1 || k > a.cols()) throw std::domain_error("rip_sampled: k out of range");
  RipEstimate est;
  est.p = p;
  est.k = k;
  est.mode = RipMode::sampled;
  est.seed = seed;
  est.min_ratio = std::numeric_limits<double>::infinity();
  est.max_ratio = 0.0;
  const auto consider = [&](const Vector& x) {
    const double denom = lp_norm(x, p);
    if (denom < 1e-300) return;
    const double ratio = lp_norm(a * x, p) / denom;
    est.min_ratio = std::min(est.min_ratio, ratio);
    est.max_ratio = std::max(est.max_ratio, ratio);
    ++est.probes;
  };
  for (Index j = 0; j < a.cols(); ++j) {
    const double ratio = lp_norm(a.col(j), p);
    est.min_ratio = std::min(est.min_ratio, ratio);
    est.max_ratio = std::max(est.max_ratio, ratio);
    ++est.probes;
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(substream(seed, t));
    consider(random_sparse_gaussian(a.cols(), k, rng));
  }
  est.ratio_bound = est.min_ratio > 0.0 ? est.max_ratio / est.min_ratio
                                        : std::numeric_limits<double>::infinity();
  return est;
}

struct AripSparsity {
  double kprime = 0.0;
  bool vacuous = false;  // kprime < 1: the conversion says nothing
};

// RIP -> ARIP parameter conversion: a (k,D)-l2-RIP matrix is (k',D')-l2-ARIP
// with k' = (D'-D)^2 k^3 / ((D'D + D' + D)^2 n^2).
inline AripSparsity rip_to_arip_params(Index k, double big_d, double big_d_prime, Index n) {
  if (!(big_d_prime > big_d) || big_d < 1.0) {
    throw std::domain_error("rip_to_arip_params: need D' > D >= 1");
  }
  const double gap = big_d_prime - big_d;
  const double denom = big_d_prime * big_d + big_d_prime + big_d;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  AripSparsity out;
  out.kprime = gap * gap * kd * kd * kd / (denom * denom * nd * nd);
  out.vacuous = out.kprime < 1.0;
  return out;
}

struct FalsifyResult {
  Vector low_probe;   // achieves low_ratio
  Vector high_probe;  // achieves high_ratio
  double low_ratio = 0.0;
  double high_ratio = 0.0;
};

// Search for a pair of distortion-qualified probes whose l2 ratios are more
// than a factor D apart; such a pair rules out every K in the ARIP bracket.
// Candidates: coordinate vectors, seeded random k-sparse Gaussians, and any
// caller-supplied vectors (e.g. the matrix-exponential witness). An empty
// return is not a certificate of ARIP.
inline std::optional<FalsifyResult> arip_falsify(
    const Matrix& a, Index k, double big_d, std::uint64_t trials, std::uint64_t seed,
    const std::vector<Vector>& extra_candidates = {}) {
  const Index n = a.cols();
  const double threshold =
      std::sqrt(static_cast<double>(n) / static_cast<double>(k)) * (1.0 - 1e-12);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  Vector lo_vec, hi_vec;
  const auto consider = [&](const Vector& x) {
    const double norm2 = lp_norm(x, 2.0);
    if (norm2 < 1e-300) return;
    if (distortion(x, 1.0, 2.0).delta < threshold) return;
    const double ratio = lp_norm(a * x, 2.0) / norm2;
    if (ratio < lo) {
      lo = ratio;
      lo_vec = x;
    }
    if (ratio > hi) {
      hi = ratio;
      hi_vec = x;
    }
  };
  for (Index j = 0; j < n; ++j) consider(Vector::Unit(n, j));
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng(substream(seed, t));
    consider(random_sparse_gaussian(n, k, rng));
  }
  for (const Vector& x : extra_candidates) consider(x);
  if (hi > big_d * lo * (1.0 + 1e-12)) {
    return FalsifyResult{lo_vec, hi_vec, lo, hi};
  }
  return std::nullopt;
}

struct BoundViolation {
  Index index = 0;
  double norm = 0.0;
  double bound = 0.0;
};

struct BasicBoundsReport {
  double normalization_factor = 1.0;
  double row_bound = 0.0;  // D sqrt(n/k)
  double col_bound = 0.0;  // D
  std::vector<BoundViolation> row_violations;
  std::vector<BoundViolation> col_violations;
  bool passed() const { return row_violations.empty() && col_violations.empty(); }
};

// Necessary conditions for (k,D)-l2-ARIP after ||A||_F = sqrt(n)
// normalization: every row l2-norm at most D sqrt(n/k), every column l2-norm
// at most D. Any violation is a disproof.
inline BasicBoundsReport basic_bounds_audit(const Matrix& a, Index k, double big_d) {
  const auto normalized = normalize_frobenius(a, std::sqrt(static_cast<double>(a.cols())));
  BasicBoundsReport report;
  report.normalization_factor = normalized.factor;
  report.row_bound =
      big_d * std::sqrt(static_cast<double>(a.cols()) / static_cast<double>(k));
  report.col_bound = big_d;
  for (Index i = 0; i < normalized.matrix.rows(); ++i) {
    const double norm = normalized.matrix.row(i).norm();
    if (norm > report.row_bound + 1e-9) {
      report.row_violations.push_back({i, norm, report.row_bound});
    }
  }
  for (Index j = 0; j < normalized.matrix.cols(); ++j) {
    const double norm = normalized.matrix.col(j).norm();
    if (norm > report.col_bound + 1e-9) {
      report.col_violations.push_back({j, norm, report.col_bound});
    }
  }
  return report;
}

}  // namespace riplab

#endif  // RIPLAB_RIPCERT_HPP
