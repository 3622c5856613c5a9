#ifndef RIPLAB_DISTORTION_HPP
#define RIPLAB_DISTORTION_HPP

#include <numeric>

#include "riplab/matcore.hpp"

namespace riplab {

struct DistortionProfile {
  double q = 0.0;
  double p = 0.0;
  double delta = 0.0;  // ||x||_p n^{1/q - 1/p} / ||x||_q
  Index dim = 0;
  Index support_size = 0;
};

inline Index support_size(const Vector& x) {
  Index s = 0;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) ++s;
  }
  return s;
}

inline DistortionProfile distortion(const Vector& x, double q, double p) {
  if (!(1.0 <= q && q < p)) throw std::domain_error("distortion: need 1 <= q < p");
  const double norm_q = lp_norm(x, q);
  if (norm_q < 1e-300) throw DegenerateError("distortion: zero vector");
  DistortionProfile profile;
  profile.q = q;
  profile.p = p;
  profile.dim = x.size();
  profile.support_size = support_size(x);
  profile.delta = lp_norm(x, p) *
                  std::pow(static_cast<double>(x.size()), 1.0 / q - 1.0 / p) / norm_q;
  return profile;
}

struct CompressibilityWitness {
  Index k = 0;
  double epsilon = 0.0;  // ||x - y||_p / ||x||_p
  Vector approximant;    // k-sparse y
  double p = 0.0;
};

// Keep the k largest-magnitude entries (smallest index on ties), zero the
// rest. Optimal over all k-sparse approximants for every p >= 1.
inline CompressibilityWitness best_k_approx(const Vector& x, Index k, double p) {
  if (k < 0 || k > x.size()) throw std::domain_error("best_k_approx: k out of range");
  const double norm_p = lp_norm(x, p);
  if (norm_p < 1e-300) throw DegenerateError("best_k_approx: zero vector");
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&x](Index a, Index b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  CompressibilityWitness w;
  w.k = k;
  w.p = p;
  w.approximant = Vector::Zero(x.size());
  for (Index r = 0; r < k; ++r) w.approximant[order[static_cast<std::size_t>(r)]] = x[order[static_cast<std::size_t>(r)]];
  w.epsilon = lp_norm(x - w.approximant, p) / norm_p;
  return w;
}

// Lower bound on the (q,p)-distortion of any (k,eps)-lp-compressible vector.
inline double compressible_to_distortion_bound(Index k, Index n, double epsilon,
                                               double q, double p) {
  if (!(1.0 <= q && q < p)) throw std::domain_error("need 1 <= q < p");
  if (k <= 0 || k > n) throw std::domain_error("need 0 < k <= n");
  if (epsilon < 0.0) throw std::domain_error("need epsilon >= 0");
  const double ratio = std::pow(static_cast<double>(k) / static_cast<double>(n),
                                1.0 / q - 1.0 / p);
  return 1.0 / (ratio + epsilon);
}

// Converse direction: every x is (k, (n/k)^{1/q} / Delta_{q,p}(x))-lp-compressible.
// The returned witness is the optimal top-k truncation; the bound is asserted
// because it is an unconditional theorem about that truncation.
inline CompressibilityWitness distortion_to_compressibility(const Vector& x, Index k,
                                                            double q, double p) {
  const DistortionProfile profile = distortion(x, q, p);
  CompressibilityWitness w = best_k_approx(x, k, p);
  const double bound = std::pow(static_cast<double>(x.size()) / static_cast<double>(k),
                                1.0 / q) /
                       profile.delta;
  if (w.epsilon > bound + 1e-9) {
    throw TheoremViolation("distortion_to_compressibility: epsilon exceeds the guaranteed bound");
  }
  return w;
}

}  // namespace riplab

#endif  // RIPLAB_DISTORTION_HPP
