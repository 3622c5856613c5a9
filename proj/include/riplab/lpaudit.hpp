#ifndef RIPLAB_LPAUDIT_HPP
#define RIPLAB_LPAUDIT_HPP

#include "riplab/matcore.hpp"
#include "riplab/rng.hpp"

namespace riplab {

// f(p) = E|g|^p for g ~ N(0,1): 2^{p/2} Gamma((1+p)/2) / sqrt(pi).
inline double gaussian_moment(double p) {
  if (p < 0.0) throw std::domain_error("gaussian_moment: p must be >= 0");
  return std::exp(0.5 * p * std::numbers::ln2 + std::lgamma(0.5 * (1.0 + p)) -
                  0.5 * std::log(std::numbers::pi));
}

struct RowNormAudit {
  double p = 0.0;
  Index k = 0;
  double big_d = 0.0;
  double sum_l2p = 0.0;  // sum_i ||A_{i*}||_2^p
  double sum_lpp = 0.0;  // sum_i ||A_{i*}||_p^p
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;    // lhs - rhs; negative beyond tolerance disproves RIP
  double implied_d_lower = 0.0;
  bool trivial = false;  // p == 2: both sides coincide
};

// Row-norm sum inequality that every (k,D)-lp-RIP matrix must satisfy:
//   p < 2:  D^p (n/k)^{1-p/2} sum ||A_{i*}||_2^p >= sum ||A_{i*}||_p^p
//   p > 2:  sum ||A_{i*}||_2^p <= D^p (n/k)^{p/2-1} sum ||A_{i*}||_p^p
// implied_d_lower is the smallest D for which the inequality holds.
inline RowNormAudit row_norm_audit(const Matrix& a, double p, Index k, double big_d) {
  if (p < 1.0) throw std::domain_error("row_norm_audit: p must be >= 1");
  RowNormAudit audit;
  audit.p = p;
  audit.k = k;
  audit.big_d = big_d;
  for (Index i = 0; i < a.rows(); ++i) {
    const Vector row = a.row(i).transpose();
    audit.sum_l2p += std::pow(lp_norm(row, 2.0), p);
    audit.sum_lpp += std::pow(lp_norm(row, p), p);
  }
  const double n_over_k = static_cast<double>(a.cols()) / static_cast<double>(k);
  if (p == 2.0) {
    audit.trivial = true;
    audit.lhs = audit.sum_l2p;
    audit.rhs = audit.sum_lpp;
    audit.slack = audit.lhs - audit.rhs;
    audit.implied_d_lower = 1.0;
    return audit;
  }
  if (p < 2.0) {
    audit.lhs = std::pow(big_d, p) * std::pow(n_over_k, 1.0 - 0.5 * p) * audit.sum_l2p;
    audit.rhs = audit.sum_lpp;
    audit.implied_d_lower = std::pow(
        std::pow(1.0 / n_over_k, 1.0 - 0.5 * p) * audit.sum_lpp / audit.sum_l2p, 1.0 / p);
  } else {
    audit.lhs = std::pow(big_d, p) * std::pow(n_over_k, 0.5 * p - 1.0) * audit.sum_lpp;
    audit.rhs = audit.sum_l2p;
    audit.implied_d_lower = std::pow(
        std::pow(1.0 / n_over_k, 0.5 * p - 1.0) * audit.sum_l2p / audit.sum_lpp, 1.0 / p);
  }
  audit.slack = audit.lhs - audit.rhs;
  return audit;
}

// sum_i ||A_{i,S}||_2^p, rows restricted to the columns in S. Under K = 1
// normalization this is at least |S| for p < 2 and at most |S| D^p for p > 2.
inline double support_norm_sum(const Matrix& a, const IndexSet& support, double p) {
  validate_index_set(support, a.cols(), "support_norm_sum");
  double sum = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    double sq = 0.0;
    for (Index j : support) sq += a(i, j) * a(i, j);
    sum += std::pow(std::sqrt(sq), p);
  }
  return sum;
}

struct GaussianProbe {
  double empirical_ratio = 0.0;  // mean ||Ax||_p^p / mean ||x||_p^p
  double predicted_ratio = 0.0;  // support_norm_sum / |S|
  double stderr_ = 0.0;
  Vector best_low;    // sample with the smallest per-sample ratio
  Vector best_high;   // sample with the largest per-sample ratio
  double best_low_ratio = 0.0;
  double best_high_ratio = 0.0;
};

// Probe A with i.i.d. standard Gaussians on the support S. In expectation
// ||x||_p^p is f(p)|S| and ||Ax||_p^p is f(p) sum_i ||A_{i,S}||_2^p, so the
// ratio of means estimates support_norm_sum/|S|. The extreme single samples
// witness the two sides of the mean (some sample is at or below the mean
// ratio, some at or above).
inline GaussianProbe gaussian_probe(const Matrix& a, const IndexSet& support, double p,
                                    std::uint64_t trials, std::uint64_t seed) {
  if (trials < 100) throw std::domain_error("gaussian_probe: need at least 100 trials");
  validate_index_set(support, a.cols(), "gaussian_probe");
  const Index n = a.cols();
  GaussianProbe probe;
  probe.predicted_ratio =
      support_norm_sum(a, support, p) / static_cast<double>(support.size());
  std::vector<double> numerators(trials), denominators(trials);
  probe.best_low_ratio = std::numeric_limits<double>::infinity();
  probe.best_high_ratio = -std::numeric_limits<double>::infinity();
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(substream(seed, trial));
    Vector x = Vector::Zero(n);
    for (Index j : support) x[j] = rng.next_gaussian();
    const double num = std::pow(lp_norm(a * x, p), p);
    const double den = std::pow(lp_norm(x, p), p);
    numerators[trial] = num;
    denominators[trial] = den;
    if (den > 0.0) {
      const double ratio = num / den;
      if (ratio < probe.best_low_ratio) {
        probe.best_low_ratio = ratio;
        probe.best_low = x;
      }
      if (ratio > probe.best_high_ratio) {
        probe.best_high_ratio = ratio;
        probe.best_high = x;
      }
    }
  }
  const auto count = static_cast<double>(trials);
  double mean_num = 0.0, mean_den = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    mean_num += numerators[trial];
    mean_den += denominators[trial];
  }
  mean_num /= count;
  mean_den /= count;
  probe.empirical_ratio = mean_num / mean_den;
  // ratio-estimator stderr from the numerator residuals N_t - rho_hat D_t
  double var = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const double resid = numerators[trial] - probe.empirical_ratio * denominators[trial];
    var += resid * resid;
  }
  var /= (count - 1.0);
  probe.stderr_ = std::sqrt(var / count) / mean_den;
  return probe;
}

}  // namespace riplab

#endif  // RIPLAB_LPAUDIT_HPP
