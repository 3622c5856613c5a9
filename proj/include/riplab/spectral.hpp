#ifndef RIPLAB_SPECTRAL_HPP
#define RIPLAB_SPECTRAL_HPP

#include <Eigen/Eigenvalues>

#include "riplab/matcore.hpp"

namespace riplab {

inline Matrix gram(const Matrix& a) { return a.transpose() * a; }

inline double rank_tolerance(double lambda_max) {
  return std::max(1e-10 * lambda_max, 1e-12);
}

// Full spectral decomposition of a symmetric PSD matrix, eigenvalues sorted
// non-increasing, solver noise below zero clamped away. Everything downstream
// (kernel projector, e^{-tB} action, numeric rank) reads off this object.
struct EigenSystem {
  Index dim = 0;
  Vector eigenvalues;   // lambda_1 >= ... >= lambda_n >= 0
  Matrix eigenvectors;  // column j is v_{j+1}, orthonormal
  Index numeric_rank = 0;
  double rank_tol = 0.0;

  double alpha() const { return static_cast<double>(numeric_rank) / static_cast<double>(dim); }
};

inline Index count_above_tolerance(const Vector& eigenvalues, double tol) {
  Index r = 0;
  for (Index j = 0; j < eigenvalues.size(); ++j) {
    if (eigenvalues[j] > tol) ++r;
  }
  return r;
}

inline EigenSystem eigh(const Matrix& b) {
  if (b.rows() != b.cols()) throw std::invalid_argument("eigh: matrix not square");
  const double fro = std::sqrt(frobenius_sq(b));
  const double asym = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, fro)) {
    throw std::invalid_argument("eigh: matrix not symmetric within tolerance");
  }
  const Matrix sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw SpectralError("eigh: eigensolver did not converge", fro);
  }
  EigenSystem es;
  es.dim = b.rows();
  es.eigenvalues = solver.eigenvalues().reverse();
  es.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Index j = 0; j < es.dim; ++j) {
    if (es.eigenvalues[j] < 0.0) es.eigenvalues[j] = 0.0;
  }
  const double reconstruction =
      (es.eigenvectors * es.eigenvalues.asDiagonal() * es.eigenvectors.transpose() - sym).norm();
  if (reconstruction > 1e-8 * std::max(1.0, fro)) {
    throw SpectralError("eigh: reconstruction residual too large", reconstruction);
  }
  const double lambda_max = es.dim > 0 ? es.eigenvalues[0] : 0.0;
  es.rank_tol = rank_tolerance(lambda_max);
  es.numeric_rank = count_above_tolerance(es.eigenvalues, es.rank_tol);
  return es;
}

// Eigenvalues-only variant for rank queries on large matrices; skips the
// eigenvector accumulation, which dominates the cost at n in the thousands.
inline Vector eigh_values(const Matrix& b) {
  const Matrix sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SpectralError("eigh_values: eigensolver did not converge", std::sqrt(frobenius_sq(b)));
  }
  Vector vals = solver.eigenvalues().reverse();
  for (Index j = 0; j < vals.size(); ++j) {
    if (vals[j] < 0.0) vals[j] = 0.0;
  }
  return vals;
}

struct KernelProjector {
  Index dim = 0;
  Matrix projector;  // Pi = sum_{j > r} v_j v_j^T
  bool degenerate = false;  // true when ker(A) = {0}
};

inline KernelProjector kernel_projector(const EigenSystem& es) {
  KernelProjector kp;
  kp.dim = es.dim;
  if (es.numeric_rank >= es.dim) {
    kp.projector = Matrix::Zero(es.dim, es.dim);
    kp.degenerate = true;
    return kp;
  }
  const auto kernel_basis = es.eigenvectors.rightCols(es.dim - es.numeric_rank);
  kp.projector = kernel_basis * kernel_basis.transpose();
  return kp;
}

struct KernelCoordinate {
  Index index = 0;
  double value = 0.0;  // ||Pi e_i||_2 = sqrt(Pi_ii)
  bool degenerate = false;
};

// argmax_i Pi_ii, smallest index on ties. By averaging, the maximum diagonal
// entry is at least (n - r)/n, so value >= sqrt(1 - r/n).
inline KernelCoordinate max_kernel_coordinate(const KernelProjector& kp) {
  KernelCoordinate kc;
  kc.degenerate = kp.degenerate;
  double best = -1.0;
  for (Index i = 0; i < kp.dim; ++i) {
    const double d = kp.projector(i, i);
    if (d > best) {
      best = d;
      kc.index = i;
    }
  }
  kc.value = std::sqrt(std::max(0.0, best));
  return kc;
}

// x = e^{-tB} e_i computed in the eigenbasis: sum_j e^{-t lambda_j} <e_i, v_j> v_j.
// The matrix exponential is never materialized.
inline Vector exp_action(const EigenSystem& es, double t, Index i) {
  if (t < 0.0) throw std::domain_error("exp_action: t must be >= 0");
  if (i < 0 || i >= es.dim) throw std::out_of_range("exp_action: coordinate index");
  const Vector coeffs = es.eigenvectors.row(i).transpose();  // a_j = <e_i, v_j>
  Vector damped(es.dim);
  for (Index j = 0; j < es.dim; ++j) {
    damped[j] = std::exp(-t * es.eigenvalues[j]) * coeffs[j];
  }
  return es.eigenvectors * damped;
}

}  // namespace riplab

#endif  // RIPLAB_SPECTRAL_HPP
