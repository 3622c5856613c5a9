#include <catch2/catch_amalgamated.hpp>

#include "riplab/matcore.hpp"
#include "riplab/rng.hpp"
#include "riplab/spectral.hpp"

using namespace riplab;

namespace {

Vector make_vector(std::initializer_list<double> vals) {
  Vector x(static_cast<Index>(vals.size()));
  Index i = 0;
  for (double v : vals) x[i++] = v;
  return x;
}

Vector random_vector(Index n, SplitMix64& rng) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = rng.next_gaussian();
  return x;
}

}  // namespace

TEST_CASE("lp_norm on known vectors") {
  CHECK(lp_norm(make_vector({3, 4}), 2.0) == Catch::Approx(5.0));
  CHECK(lp_norm(make_vector({1, 1, 1, 1}), 1.0) == Catch::Approx(4.0));
  CHECK(lp_norm(make_vector({1, -1, 2}), 3.0) ==
        Catch::Approx(std::cbrt(10.0)).epsilon(1e-12));
  CHECK(lp_norm(make_vector({1, -7, 2}), kInfNorm) == Catch::Approx(7.0));
  CHECK(lp_norm(Vector::Zero(3), 1.5) == 0.0);
  CHECK_THROWS_AS(lp_norm(make_vector({1.0}), 0.5), std::domain_error);
}

TEST_CASE("lp_norm is non-increasing in p") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = random_vector(16, rng);
    double prev = lp_norm(x, 1.0);
    for (double p : {1.2, 1.5, 2.0, 3.0, 7.0}) {
      const double cur = lp_norm(x, p);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("frobenius_sq on known matrices") {
  CHECK(frobenius_sq(Matrix::Identity(2, 2)) == Catch::Approx(2.0));
  Matrix a(2, 2);
  a << 1, 1, 0, 1;
  CHECK(frobenius_sq(a) == Catch::Approx(3.0));
  CHECK(frobenius_sq(Matrix::Ones(3, 4)) == Catch::Approx(12.0));
}

TEST_CASE("frobenius_sq equals trace of the gram matrix") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(6, 9);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.next_gaussian();
    CHECK(frobenius_sq(a) ==
          Catch::Approx(gram(a).trace()).epsilon(1e-10));
  }
}

TEST_CASE("op_norm_l1 is the max column absolute sum") {
  CHECK(op_norm_l1(Matrix::Identity(5, 5)) == Catch::Approx(1.0));
  Matrix b(2, 2);
  b << 1, 2, 3, 4;
  CHECK(op_norm_l1(b) == Catch::Approx(6.0));
  CHECK(op_norm_l1(Matrix::Ones(7, 7)) == Catch::Approx(7.0));
}

TEST_CASE("op_norm_l1 dominates random probes and is attained by a signed indicator") {
  SplitMix64 rng(17);
  Matrix b(5, 5);
  for (Index i = 0; i < b.size(); ++i) b.data()[i] = rng.next_gaussian();
  const double norm = op_norm_l1(b);
  for (int trial = 0; trial < 10000; ++trial) {
    const Vector x = random_vector(5, rng);
    const double l1 = lp_norm(x, 1.0);
    if (l1 < 1e-12) continue;
    CHECK(lp_norm(b * x, 1.0) / l1 <= norm * (1.0 + 1e-12));
  }
  // the maximizing column index attains the norm exactly
  Index best = 0;
  b.cwiseAbs().colwise().sum().maxCoeff(&best);
  CHECK(lp_norm(b * Vector::Unit(5, best), 1.0) == Catch::Approx(norm));
}

TEST_CASE("remove_rows_cols on known inputs") {
  const Matrix id3 = Matrix::Identity(3, 3);
  Matrix expect(2, 3);
  expect << 0, 1, 0, 0, 0, 1;
  CHECK(remove_rows_cols(id3, {0}, {}) == expect);
  CHECK(remove_rows_cols(id3, {}, {}) == id3);
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const Matrix cut = remove_rows_cols(a, {1}, {0});
  REQUIRE(cut.rows() == 1);
  REQUIRE(cut.cols() == 1);
  CHECK(cut(0, 0) == 2.0);
  CHECK_THROWS_AS(remove_rows_cols(a, {5}, {}), std::out_of_range);
  CHECK_THROWS_AS(remove_rows_cols(a, {0, 0}, {}), std::out_of_range);
}

TEST_CASE("remove_rows_cols composes") {
  SplitMix64 rng(23);
  Matrix a(6, 6);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng.next_gaussian();
  const Matrix joint = remove_rows_cols(a, {1, 4}, {0, 3, 5});
  const Matrix rows_first = remove_rows_cols(remove_rows_cols(a, {1, 4}, {}), {}, {0, 3, 5});
  CHECK(joint == rows_first);
}

TEST_CASE("normalize_frobenius") {
  {
    const auto [mat, factor] = normalize_frobenius(Matrix::Identity(2, 2), std::sqrt(2.0));
    CHECK(factor == Catch::Approx(1.0));
    CHECK(mat == Matrix::Identity(2, 2));
  }
  {
    const auto [mat, factor] =
        normalize_frobenius(2.0 * Matrix::Identity(2, 2), std::sqrt(2.0));
    CHECK(factor == Catch::Approx(0.5));
    CHECK(mat.isApprox(Matrix::Identity(2, 2)));
  }
  {
    Matrix a(2, 2);
    a << 1, 1, 0, 1;
    const auto [mat, factor] = normalize_frobenius(a, std::sqrt(2.0));
    CHECK(factor == Catch::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(frobenius_sq(mat) == Catch::Approx(2.0));
  }
  CHECK_THROWS_AS(normalize_frobenius(Matrix::Zero(3, 3), 1.0), DegenerateError);
}
