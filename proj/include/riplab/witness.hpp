#ifndef RIPLAB_WITNESS_HPP
#define RIPLAB_WITNESS_HPP

#include "riplab/ripcert.hpp"

namespace riplab {

// Witness against ARIP: x = e^{-tB} e_{i_ker} with B = A^T A and
// t = ln(sqrt(k(1-alpha))) / ||B||_{l1->l1}. The four recorded properties
// are unconditional theorems about this construction:
//   ||x||_2 >= sqrt(1-alpha)
//   ||x||_1 <= e^{t ||B||_{l1->l1}}
//   ||Ax||_2 <= 1/(2te)
//   Delta_{1,2}(x) >= sqrt(n/k)
// Together they force D >= implied_d_lower for any (k,D)-l2-ARIP matrix.
struct WitnessReport {
  Index i_ker = 0;
  double t = 0.0;
  Vector x;
  double l1 = 0.0;
  double l2 = 0.0;
  double image_l2 = 0.0;  // ||Ax||_2
  double delta12 = 0.0;
  double alpha = 0.0;      // rank / n
  double op_norm_b = 0.0;  // ||B||_{l1->l1}
  double implied_d_lower = 0.0;
  double normalization_factor = 1.0;
};

inline double implied_d_lower_formula(Index k, double alpha, double op_norm_b,
                                      double frob_sq, Index n) {
  return std::numbers::e * std::sqrt(1.0 - alpha) *
         std::log(static_cast<double>(k) * (1.0 - alpha)) * frob_sq /
         (static_cast<double>(n) * op_norm_b);
}

inline WitnessReport arip_witness(const Matrix& a, Index k) {
  const Index n = a.cols();
  if (k < 1 || k > n) throw std::domain_error("arip_witness: k out of range");
  const auto normalized = normalize_frobenius(a, std::sqrt(static_cast<double>(n)));
  const Matrix b = gram(normalized.matrix);
  const EigenSystem es = eigh(b);
  if (es.numeric_rank >= n) {
    throw DegenerateError("arip_witness: matrix has full column rank, no kernel to project onto");
  }
  const double alpha = es.alpha();
  const double k_eff = static_cast<double>(k) * (1.0 - alpha);
  if (k_eff <= 1.0) {
    throw DegenerateError("arip_witness: k(1-alpha) <= 1, witness time would be nonpositive");
  }
  WitnessReport report;
  report.normalization_factor = normalized.factor;
  report.alpha = alpha;
  report.op_norm_b = op_norm_l1(b);
  report.t = std::log(std::sqrt(k_eff)) / report.op_norm_b;
  // lambda e^{-2t lambda} <= 1/(2te) for every lambda >= 0; verify on the
  // actual spectrum since Property 3 rests on it
  for (Index j = 0; j < es.dim; ++j) {
    const double lam = es.eigenvalues[j];
    if (lam * std::exp(-2.0 * report.t * lam) >
        1.0 / (2.0 * report.t * std::numbers::e) + 1e-8) {
      throw TheoremViolation("arip_witness: spectral damping inequality failed");
    }
  }
  const KernelCoordinate kc = max_kernel_coordinate(kernel_projector(es));
  report.i_ker = kc.index;
  report.x = exp_action(es, report.t, report.i_ker);
  report.l1 = lp_norm(report.x, 1.0);
  report.l2 = lp_norm(report.x, 2.0);
  report.image_l2 = lp_norm(normalized.matrix * report.x, 2.0);
  report.delta12 = distortion(report.x, 1.0, 2.0).delta;
  report.implied_d_lower = implied_d_lower_formula(
      k, alpha, report.op_norm_b, frobenius_sq(normalized.matrix), n);
  return report;
}

// D >= e sqrt(1-alpha) ln(k(1-alpha)) ||A||_F^2 / (n ||A^T A||_{l1->l1})
// for any (k,D)-l2-ARIP matrix. Scale-invariant; only needs eigenvalues
// (for the rank), so it stays cheap at n in the thousands.
inline double implied_d_lower(const Matrix& a, Index k) {
  const Index n = a.cols();
  const Matrix b = gram(a);
  const Vector eigenvalues = eigh_values(b);
  const double tol = rank_tolerance(eigenvalues.size() > 0 ? eigenvalues[0] : 0.0);
  const Index rank = count_above_tolerance(eigenvalues, tol);
  if (rank >= n) throw DegenerateError("implied_d_lower: no kernel");
  const double alpha = static_cast<double>(rank) / static_cast<double>(n);
  if (static_cast<double>(k) * (1.0 - alpha) <= 1.0) {
    throw DegenerateError("implied_d_lower: k(1-alpha) <= 1, bound vacuous");
  }
  return implied_d_lower_formula(k, alpha, op_norm_l1(b), frobenius_sq(a), n);
}

struct HeavyColumnReport {
  Matrix stripped;        // A without the heavy columns
  IndexSet heavy;         // J
  double w = 0.0;         // sum_i ||A_{i*}||_1^2
  double h = 0.0;         // threshold 2WD^2/n
  double max_allowed_j = 0.0;    // n/(2D^2)
  double stripped_frob_sq = 0.0;
  bool column_premise_holds = true;  // all ||A_{*j}||_2 <= D
};

// Remove the l1-heavy columns of B = A^T A: J = {j : ||B_{*j}||_1 >= H},
// H = 2WD^2/n. Certifies |J| <= n/(2D^2) always, and ||A'||_F^2 >= n/2
// whenever the column-norm premise of an ARIP matrix holds; a premise
// failure already refutes ARIP on its own.
inline HeavyColumnReport heavy_column_strip(const Matrix& a, double big_d) {
  const Index n = a.cols();
  const auto normalized = normalize_frobenius(a, std::sqrt(static_cast<double>(n)));
  const Matrix& an = normalized.matrix;
  const Matrix b = gram(an);
  HeavyColumnReport report;
  for (Index i = 0; i < an.rows(); ++i) {
    const double r1 = an.row(i).cwiseAbs().sum();
    report.w += r1 * r1;
  }
  report.h = 2.0 * report.w * big_d * big_d / static_cast<double>(n);
  report.max_allowed_j = static_cast<double>(n) / (2.0 * big_d * big_d);
  for (Index j = 0; j < n; ++j) {
    if (b.col(j).cwiseAbs().sum() >= report.h) report.heavy.push_back(j);
    if (an.col(j).norm() > big_d + 1e-9) report.column_premise_holds = false;
  }
  if (static_cast<double>(report.heavy.size()) > report.max_allowed_j + 1.0) {
    throw TheoremViolation("heavy_column_strip: |J| exceeds n/(2D^2)");
  }
  report.stripped = remove_rows_cols(an, {}, report.heavy);
  report.stripped_frob_sq = frobenius_sq(report.stripped);
  if (report.column_premise_holds &&
      report.stripped_frob_sq < static_cast<double>(n) / 2.0 - 1e-6) {
    throw TheoremViolation("heavy_column_strip: stripped Frobenius mass below n/2");
  }
  return report;
}

struct RowRemovalResult {
  Matrix remainder;  // A without rows I and columns J
  IndexSet removed_cols;
  double kprime = 0.0;
  double new_d_factor = 0.0;  // 1/sqrt(1 - k' delta^2); new D = D * this
  double col_bound = 0.0;     // theoretical |J| cap
};

// Row removal lemma: dropping rows I stays ARIP (with D inflated by
// 1/sqrt(1 - k' delta^2)) once the columns of A_I with l2-norm above
// K*delta are dropped too. Kest stands in for the unknown ARIP scale K,
// clamped to its provable range [1/D, 1].
inline RowRemovalResult row_removal(const Matrix& a, const IndexSet& row_set,
                                    double kprime, double delta, Index /*k*/,
                                    double k_est) {
  if (kprime * delta * delta >= 1.0) {
    throw std::domain_error("row_removal: k' delta^2 >= 1, inflated D diverges");
  }
  validate_index_set(row_set, a.rows(), "row_removal");
  RowRemovalResult result;
  result.kprime = kprime;
  result.new_d_factor = 1.0 / std::sqrt(1.0 - kprime * delta * delta);
  const Matrix a_rows = keep_rows(a, row_set);
  const double threshold = k_est * delta;
  for (Index j = 0; j < a.cols(); ++j) {
    if (a_rows.rows() > 0 && a_rows.col(j).norm() > threshold) {
      result.removed_cols.push_back(j);
    }
  }
  const double n = static_cast<double>(a.cols());
  result.col_bound = frobenius_sq(a_rows) * n / (delta * delta * frobenius_sq(a)) /
                     (k_est * k_est);
  result.remainder = remove_rows_cols(a, row_set, result.removed_cols);
  return result;
}

enum class CoreVerdict { consistent, refutation_evidence };

struct DenseCore {
  Matrix t_rows;            // the dense core T
  IndexSet row_indices;     // original indices of T's rows (ascending)
  double frob_fraction = 0.0;  // ||T||_F^2 / ||A||_F^2
  Index row_count = 0;
  double max_row_delta12 = 0.0;
  IndexSet removed_cols;    // J from the row-removal step
  Index k = 0;
  double big_d = 0.0;
  double eta = 0.0;
  double kprime = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double k_est = 0.0;
  double min_row_count = 0.0;     // k/(D^2 n^eta)
  double implied_d_lower_s = 0.0;  // lower bound from the surviving submatrix
  double chain_value = 0.0;        // sum_i ||S_{i*}||_1^2 / ||S||_F^2
  bool window_low_ok = true;       // 64 D^8/(1-alpha)^4 <= n^eta
  bool window_high_ok = true;      // n^eta <= k/D^2
  CoreVerdict verdict = CoreVerdict::consistent;
  std::vector<std::string> notes;
};

// Dense-core pipeline: sort rows by distortion, take the minimal prefix T
// with ||T||_F^2 >= n^{1-eta}, remove those rows (with the compensating
// column set), then audit the survivor with the matrix-exponential bound.
// If A is genuinely (k,D)-l2-ARIP all certified properties must hold; a
// failure is evidence of refutation, not an error.
inline DenseCore dense_core_extract(const Matrix& a, Index k, double big_d, double eta,
                                    std::optional<double> k_est_override = std::nullopt,
                                    std::uint64_t seed = 0) {
  const Index n = a.cols();
  const Index m = a.rows();
  const auto normalized = normalize_frobenius(a, std::sqrt(static_cast<double>(n)));
  const Matrix& an = normalized.matrix;
  DenseCore core;
  core.k = k;
  core.big_d = big_d;
  core.eta = eta;

  const Vector eigenvalues = eigh_values(gram(an));
  const Index rank = count_above_tolerance(eigenvalues, rank_tolerance(eigenvalues[0]));
  core.alpha = static_cast<double>(rank) / static_cast<double>(n);

  const double n_eta = std::pow(static_cast<double>(n), eta);
  const double one_minus_alpha = 1.0 - core.alpha;
  const double window_low = 64.0 * std::pow(big_d, 8.0) / std::pow(one_minus_alpha, 4.0);
  core.window_low_ok = window_low <= n_eta;
  core.window_high_ok = n_eta <= static_cast<double>(k) / (big_d * big_d);
  if (!core.window_low_ok) core.notes.push_back("hypothesis window: 64 D^8/(1-alpha)^4 > n^eta");
  if (!core.window_high_ok) core.notes.push_back("hypothesis window: n^eta > k/D^2");

  // rows sorted by Delta_{1,2} non-decreasing, original index on ties
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::vector<double> row_delta(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const Vector row = an.row(i).transpose();
    row_delta[static_cast<std::size_t>(i)] =
        lp_norm(row, 2.0) < 1e-300 ? 1.0 : distortion(row, 1.0, 2.0).delta;
  }
  std::stable_sort(order.begin(), order.end(), [&row_delta](Index x, Index y) {
    return row_delta[static_cast<std::size_t>(x)] < row_delta[static_cast<std::size_t>(y)];
  });

  const double mass_target = std::pow(static_cast<double>(n), 1.0 - eta);
  double mass = 0.0;
  Index t = 0;
  while (t < m && mass < mass_target) {
    mass += an.row(order[static_cast<std::size_t>(t)]).squaredNorm();
    ++t;
  }
  core.row_count = t;
  core.min_row_count = static_cast<double>(k) / (big_d * big_d * n_eta);
  core.row_indices.assign(order.begin(), order.begin() + t);
  std::sort(core.row_indices.begin(), core.row_indices.end());
  core.t_rows = keep_rows(an, core.row_indices);
  core.frob_fraction = frobenius_sq(core.t_rows) / static_cast<double>(n);
  core.max_row_delta12 =
      t > 0 ? row_delta[static_cast<std::size_t>(order[static_cast<std::size_t>(t - 1)])] : 0.0;
  if (static_cast<double>(t) < core.min_row_count - 1.0) {
    core.verdict = CoreVerdict::refutation_evidence;
    core.notes.push_back("dense core has fewer rows than k/(D^2 n^eta): some row violates the ARIP row-norm bound");
  }

  core.kprime = one_minus_alpha * n_eta / (8.0 * std::pow(big_d, 4.0));
  core.delta = core.kprime > 0.0 ? std::sqrt(1.0 / (2.0 * core.kprime)) : 0.0;
  if (k_est_override) {
    core.k_est = *k_est_override;
  } else {
    const RipEstimate sampled = rip_sampled(an, k, 2.0, 200, seed);
    core.k_est = std::clamp(sampled.min_ratio, 1.0 / big_d, 1.0);
  }

  if (core.kprime <= 0.0) {
    core.notes.push_back("full numeric rank: k' vacuous, row-removal and survivor audit skipped");
    return core;
  }

  const RowRemovalResult removal =
      row_removal(an, core.row_indices, core.kprime, core.delta, k, core.k_est);
  core.removed_cols = removal.removed_cols;
  const Matrix& survivor = removal.remainder;

  double l1_sq_sum = 0.0;
  for (Index i = 0; i < survivor.rows(); ++i) {
    const double r1 = survivor.row(i).cwiseAbs().sum();
    l1_sq_sum += r1 * r1;
  }
  const double survivor_frob_sq = frobenius_sq(survivor);
  core.chain_value = survivor_frob_sq > 0.0 ? l1_sq_sum / survivor_frob_sq : 0.0;

  const auto kprime_floor = static_cast<Index>(std::floor(core.kprime));
  try {
    if (kprime_floor >= 1 && survivor.rows() > 0 && survivor.cols() > 0) {
      core.implied_d_lower_s = implied_d_lower(survivor, kprime_floor);
      const double inflated_d = big_d * removal.new_d_factor;
      if (core.implied_d_lower_s > inflated_d) {
        core.verdict = CoreVerdict::refutation_evidence;
        core.notes.push_back("survivor submatrix forces D beyond the row-removal-inflated bound");
      }
    } else {
      core.notes.push_back("k' < 1 or empty survivor: exponential-witness audit skipped");
    }
  } catch (const DegenerateError& e) {
    core.notes.push_back(std::string("survivor audit degenerate: ") + e.what());
  }
  return core;
}

// arip_falsify with the Lemma-3.5 witness added to the candidate pool.
inline std::optional<FalsifyResult> arip_falsify_with_witness(
    const Matrix& a, Index k, double big_d, std::uint64_t trials, std::uint64_t seed) {
  std::vector<Vector> extras;
  try {
    const auto normalized = normalize_frobenius(a, std::sqrt(static_cast<double>(a.cols())));
    extras.push_back(arip_witness(normalized.matrix, k).x);
  } catch (const DegenerateError&) {
    // full rank or vacuous parameters: fall back to the probe candidates
  }
  return arip_falsify(a, k, big_d, trials, seed, extras);
}

}  // namespace riplab

#endif  // RIPLAB_WITNESS_HPP
