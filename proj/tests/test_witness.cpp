#include <catch2/catch_amalgamated.hpp>

#include "riplab/ensembles.hpp"
#include "riplab/witness.hpp"

using namespace riplab;

namespace {

Matrix random_matrix(Index m, Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix a(m, n);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.next_gaussian();
  return a;
}

void check_witness_invariants(const WitnessReport& w, Index n, Index k) {
  CHECK(w.l2 >= std::sqrt(1.0 - w.alpha) - 1e-8);
  CHECK(w.l1 <= std::exp(w.t * w.op_norm_b) * (1.0 + 1e-8));
  CHECK(w.image_l2 <= 1.0 / (2.0 * w.t * std::numbers::e) + 1e-8);
  CHECK(w.delta12 >=
        std::sqrt(static_cast<double>(n) / static_cast<double>(k)) * (1.0 - 1e-8));
  // the proof's chain: Delta >= sqrt(n(1-alpha)) / e^{t ||B||}
  CHECK(w.delta12 >= std::sqrt(static_cast<double>(n) * (1.0 - w.alpha)) /
                             std::exp(w.t * w.op_norm_b) * (1.0 - 1e-8));
}

}  // namespace

TEST_CASE("arip_witness closed form for a single-row matrix") {
  Matrix a(1, 3);
  a << 1, 0, 0;
  const WitnessReport w = arip_witness(a, 3);
  CHECK(w.normalization_factor == Catch::Approx(std::sqrt(3.0)));
  CHECK(w.alpha == Catch::Approx(1.0 / 3.0));
  CHECK(w.op_norm_b == Catch::Approx(3.0));
  CHECK(w.t == Catch::Approx(std::log(std::sqrt(2.0)) / 3.0));
  CHECK(w.i_ker == 1);
  CHECK((w.x - Vector::Unit(3, 1)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(w.l2 == Catch::Approx(1.0));
  CHECK(w.image_l2 == Catch::Approx(0.0).margin(1e-10));
  CHECK(w.delta12 == Catch::Approx(std::sqrt(3.0)));
  check_witness_invariants(w, 3, 3);
}

TEST_CASE("arip_witness error paths") {
  CHECK_THROWS_AS(arip_witness(Matrix::Identity(3, 3), 3), DegenerateError);
  // k(1-alpha) <= 1: rank 2 out of 3, k = 3 gives k(1-alpha) = 1
  Matrix a(2, 3);
  a << 1, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(arip_witness(a, 3), DegenerateError);
}

TEST_CASE("witness invariants hold across ensembles") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    {
      const Matrix a = random_matrix(32, 64, 900 + seed);
      const WitnessReport w = arip_witness(a, 32);
      check_witness_invariants(w, 64, 32);
      CHECK(w.implied_d_lower > 0.0);
    }
    {
      EnsembleSpec spec;
      spec.kind = EnsembleKind::columnRegular;
      spec.m = 128;
      spec.n = 256;
      spec.sparsity = 8;
      spec.seed = seed;
      const WitnessReport w = arip_witness(generate(spec), 128);
      check_witness_invariants(w, 256, 128);
    }
  }
}

TEST_CASE("implied_d_lower closed form for a scaled partial identity") {
  const Index n = 16, k = n / 2;
  Matrix a = Matrix::Zero(n / 2, n);
  for (Index i = 0; i < n / 2; ++i) a(i, i) = std::sqrt(2.0);
  // B = diag(2,...,2,0,...,0): opnorm 2, alpha = 1/2, ||A||_F^2 = n
  const double expected = std::numbers::e * std::sqrt(0.5) *
                          std::log(static_cast<double>(k) * 0.5) / 2.0;
  CHECK(implied_d_lower(a, k) == Catch::Approx(expected).epsilon(1e-12));
  // scale invariance
  CHECK(implied_d_lower(100.0 * a, k) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("implied_d_lower calibration at k(1-alpha) = e") {
  // ln term equals exactly 1 at the calibration point
  const double bound = implied_d_lower_formula(/*k=*/4, 1.0 - std::numbers::e / 4.0,
                                               /*op_norm_b=*/3.0, /*frob_sq=*/16.0,
                                               /*n=*/16);
  CHECK(bound ==
        Catch::Approx(std::numbers::e * std::sqrt(std::numbers::e / 4.0) / 3.0));
}

TEST_CASE("implied_d_lower matches the witness report") {
  const Matrix a = random_matrix(16, 40, 77);
  const WitnessReport w = arip_witness(a, 20);
  CHECK(implied_d_lower(a, 20) == Catch::Approx(w.implied_d_lower).epsilon(1e-10));
}

TEST_CASE("heavy_column_strip identity has no heavy columns") {
  const HeavyColumnReport report = heavy_column_strip(Matrix::Identity(8, 8), 1.0);
  CHECK(report.heavy.empty());
  CHECK(report.w == Catch::Approx(8.0));
  CHECK(report.h == Catch::Approx(2.0));
  CHECK(report.column_premise_holds);
}

TEST_CASE("heavy_column_strip flags a constructed dense column") {
  const Index n = 16;
  Matrix a = Matrix::Identity(n, n);
  a.col(0) = 5.0 * Vector::Ones(n);
  const HeavyColumnReport report = heavy_column_strip(a, 1.0);
  REQUIRE_FALSE(report.heavy.empty());
  CHECK(report.heavy.front() == 0);
}

TEST_CASE("heavy_column_strip certified bounds on sparse ensembles") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::columnRegular;
    spec.m = 128;
    spec.n = 256;
    spec.sparsity = 8;
    spec.seed = seed;
    const double big_d = 2.0;
    const HeavyColumnReport report = heavy_column_strip(generate(spec), big_d);
    CHECK(static_cast<double>(report.heavy.size()) <=
          static_cast<double>(spec.n) / (2.0 * big_d * big_d) + 1.0);
    if (report.column_premise_holds) {
      CHECK(report.stripped_frob_sq >= static_cast<double>(spec.n) / 2.0 - 1e-6);
    }
  }
}

TEST_CASE("row_removal by hand") {
  {
    const RowRemovalResult result =
        row_removal(Matrix::Identity(2, 2), {0}, 1.0, 0.5, 2, 1.0);
    CHECK(result.removed_cols == IndexSet{0});
    REQUIRE(result.remainder.rows() == 1);
    REQUIRE(result.remainder.cols() == 1);
    CHECK(result.remainder(0, 0) == 1.0);
  }
  {
    const Matrix a = random_matrix(5, 5, 3);
    const RowRemovalResult result = row_removal(a, {}, 2.0, 0.3, 3, 1.0);
    CHECK(result.removed_cols.empty());
    CHECK(result.remainder == a);
  }
  {
    // delta above every column norm of A_I: nothing removed
    const Matrix a = 0.1 * Matrix::Identity(4, 4);
    const RowRemovalResult result = row_removal(a, {0}, 1.0, 0.9, 4, 1.0);
    CHECK(result.removed_cols.empty());
  }
  CHECK_THROWS_AS(row_removal(Matrix::Identity(2, 2), {0}, 8.0, 0.5, 2, 1.0),
                  std::domain_error);
}

TEST_CASE("row_removal survivor inequality on sampled sparse vectors") {
  const Index n = 24, m = 20;
  const auto normalized =
      normalize_frobenius(random_matrix(m, n, 8), std::sqrt(static_cast<double>(n)));
  const Matrix& a = normalized.matrix;
  const IndexSet rows{0, 3, 7};
  const double kprime = 3.0, delta = 0.35, k_est = 0.8;
  const RowRemovalResult result = row_removal(a, rows, kprime, delta, n, k_est);
  CHECK(static_cast<double>(result.removed_cols.size()) <= result.col_bound + 1.0);
  const Matrix a_surviving_rows = remove_rows_cols(a, rows, {});
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  for (Index j : result.removed_cols) removed[static_cast<std::size_t>(j)] = true;
  SplitMix64 rng(99);
  int tested = 0;
  while (tested < 1000) {
    Vector x = Vector::Zero(n);
    for (Index r = 0; r < static_cast<Index>(kprime); ++r) {
      Index j;
      do {
        j = static_cast<Index>(rng.next_below(n));
      } while (removed[static_cast<std::size_t>(j)]);
      x[j] = rng.next_gaussian();
    }
    const double norm2 = x.norm();
    if (norm2 < 1e-12) continue;
    ++tested;
    const double lhs = (a_surviving_rows * x).squaredNorm();
    const double rhs = (a * x).squaredNorm() -
                       kprime * delta * delta * k_est * k_est * norm2 * norm2;
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("dense_core_extract on the identity") {
  const Index n = 16;
  const DenseCore core = dense_core_extract(Matrix::Identity(n, n), n, 1.0, 0.5);
  CHECK(core.row_count == 4);  // ceil(n^{1-eta}) unit-norm rows
  CHECK(core.frob_fraction == Catch::Approx(0.25));
  CHECK(core.frob_fraction >= std::pow(static_cast<double>(n), -0.5) - 1e-9);
  CHECK(core.max_row_delta12 == Catch::Approx(4.0));  // sqrt(n)
}

TEST_CASE("dense_core_extract puts a huge row first") {
  const Index n = 16;
  Matrix a(n + 1, n);
  a.topRows(n) = Matrix::Identity(n, n);
  a.row(n) = 100.0 * Vector::Ones(n).transpose();
  const DenseCore core = dense_core_extract(a, n, 1.0, 0.5);
  CHECK(core.row_count == 1);
  CHECK(core.row_indices == IndexSet{n});
}

TEST_CASE("dense_core_extract full pipeline on a sparse ensemble") {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::columnRegular;
  spec.m = 128;
  spec.n = 256;
  spec.sparsity = 8;
  spec.seed = 2;
  const Index k = 128;
  const double big_d = 2.0;
  const double eta = 0.6;
  const DenseCore core = dense_core_extract(generate(spec), k, big_d, eta, std::nullopt, 4);
  CHECK(core.frob_fraction >= std::pow(256.0, -eta) - 1e-9);
  CHECK(core.row_count >= 1);
  CHECK(core.kprime == Catch::Approx((1.0 - core.alpha) * std::pow(256.0, eta) /
                                     (8.0 * std::pow(big_d, 4.0))));
  CHECK(core.delta == Catch::Approx(std::sqrt(1.0 / (2.0 * core.kprime))));
  CHECK(core.k_est >= 1.0 / big_d - 1e-12);
  CHECK(core.k_est <= 1.0 + 1e-12);
  // row sorting is a permutation: the extracted rows are rows of A
  CHECK(static_cast<Index>(core.row_indices.size()) == core.row_count);
}

TEST_CASE("dense core row selection preserves the row multiset") {
  const Matrix a = random_matrix(12, 10, 55);
  const DenseCore core = dense_core_extract(a, 10, 1.5, 0.5);
  const auto normalized = normalize_frobenius(a, std::sqrt(10.0));
  for (std::size_t i = 0; i < core.row_indices.size(); ++i) {
    CHECK(core.t_rows.row(static_cast<Index>(i))
              .isApprox(normalized.matrix.row(core.row_indices[i]), 1e-12));
  }
}
