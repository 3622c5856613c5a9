#ifndef RIPLAB_MATCORE_HPP
#define RIPLAB_MATCORE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "riplab/errors.hpp"

namespace riplab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Strictly increasing 0-based indices into a declared range.
using IndexSet = std::vector<Index>;

// Sentinel for the infinity norm in lp_norm / lp-parameterized operations.
inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

inline void validate_index_set(const IndexSet& set, Index range, const char* what) {
  Index prev = -1;
  for (Index i : set) {
    if (i <= prev || i >= range) {
      throw std::out_of_range(std::string(what) + ": index set not strictly increasing within range");
    }
    prev = i;
  }
}

// (sum |x_i|^p)^{1/p}, with max|x_i| at the infinity sentinel. Entries are
// scaled by their max before exponentiation so large p does not overflow.
inline double lp_norm(const Vector& x, double p) {
  if (p < 1.0) throw std::domain_error("lp_norm: p must be >= 1");
  const double peak = x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
  if (peak == 0.0) return 0.0;
  if (p == kInfNorm) return peak;
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    sum += std::pow(std::abs(x[i]) / peak, p);
  }
  return peak * std::pow(sum, 1.0 / p);
}

inline double frobenius_sq(const Matrix& a) { return a.squaredNorm(); }

// Exact l1->l1 operator norm: max column absolute sum.
inline double op_norm_l1(const Matrix& b) {
  if (b.cols() == 0) return 0.0;
  return b.cwiseAbs().colwise().sum().maxCoeff();
}

// Complement copy: result keeps rows outside I and columns outside J,
// original order preserved.
inline Matrix remove_rows_cols(const Matrix& a, const IndexSet& row_set,
                               const IndexSet& col_set) {
  validate_index_set(row_set, a.rows(), "remove_rows_cols rows");
  validate_index_set(col_set, a.cols(), "remove_rows_cols cols");
  std::vector<bool> drop_row(a.rows(), false), drop_col(a.cols(), false);
  for (Index i : row_set) drop_row[static_cast<std::size_t>(i)] = true;
  for (Index j : col_set) drop_col[static_cast<std::size_t>(j)] = true;
  Matrix out(a.rows() - static_cast<Index>(row_set.size()),
             a.cols() - static_cast<Index>(col_set.size()));
  Index r = 0;
  for (Index i = 0; i < a.rows(); ++i) {
    if (drop_row[static_cast<std::size_t>(i)]) continue;
    Index c = 0;
    for (Index j = 0; j < a.cols(); ++j) {
      if (drop_col[static_cast<std::size_t>(j)]) continue;
      out(r, c++) = a(i, j);
    }
    ++r;
  }
  return out;
}

inline Matrix keep_rows(const Matrix& a, const IndexSet& rows) {
  validate_index_set(rows, a.rows(), "keep_rows");
  Matrix out(static_cast<Index>(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = a.row(rows[i]);
  return out;
}

inline Matrix keep_cols(const Matrix& a, const IndexSet& cols) {
  validate_index_set(cols, a.cols(), "keep_cols");
  Matrix out(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = a.col(cols[j]);
  return out;
}

inline Matrix scale(const Matrix& a, double c) { return a * c; }

struct NormalizedMatrix {
  Matrix matrix;
  double factor;  // multiplier applied to reach the target Frobenius norm
};

// Rescale so ||A||_F equals `target`. The RIP/ARIP ratio D is invariant
// under this, which is why audits may normalize freely.
inline NormalizedMatrix normalize_frobenius(const Matrix& a, double target) {
  const double fro = std::sqrt(frobenius_sq(a));
  if (fro < 1e-300) throw DegenerateError("normalize_frobenius: zero matrix");
  const double factor = target / fro;
  return {a * factor, factor};
}

}  // namespace riplab

#endif  // RIPLAB_MATCORE_HPP
