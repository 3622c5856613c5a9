#ifndef RIPLAB_ENSEMBLES_HPP
#define RIPLAB_ENSEMBLES_HPP

#include <numeric>
#include <string>

#include "riplab/matcore.hpp"
#include "riplab/rng.hpp"

namespace riplab {

enum class EnsembleKind { denseRademacher, denseGaussian, columnRegular, rowRegular };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::denseGaussian;
  Index m = 0;
  Index n = 0;
  Index sparsity = 0;  // nonzeros per column (columnRegular) or row (rowRegular)
  std::uint64_t seed = 0;
};

inline EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "denseRademacher") return EnsembleKind::denseRademacher;
  if (name == "denseGaussian") return EnsembleKind::denseGaussian;
  if (name == "columnRegular") return EnsembleKind::columnRegular;
  if (name == "rowRegular") return EnsembleKind::rowRegular;
  throw std::domain_error("unknown ensemble kind: " + name);
}

inline std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::denseRademacher: return "denseRademacher";
    case EnsembleKind::denseGaussian: return "denseGaussian";
    case EnsembleKind::columnRegular: return "columnRegular";
    case EnsembleKind::rowRegular: return "rowRegular";
  }
  return "?";
}

namespace detail {

// Place `count` signed units at distinct random positions of a length-`len`
// slot range via partial Fisher-Yates.
inline void fill_regular_slice(double* slots, Index stride, Index len, Index count,
                               SplitMix64& rng) {
  std::vector<Index> pool(static_cast<std::size_t>(len));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index r = 0; r < count; ++r) {
    const auto pick = static_cast<std::size_t>(r) +
                      static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(len - r)));
    std::swap(pool[static_cast<std::size_t>(r)], pool[pick]);
    slots[pool[static_cast<std::size_t>(r)] * stride] = static_cast<double>(rng.next_sign());
  }
}

}  // namespace detail

// Deterministic seeded generation; column j (or row i, for rowRegular) draws
// from substream(seed, j), so the output is identical for a fixed spec
// regardless of evaluation order.
inline Matrix generate(const EnsembleSpec& spec) {
  if (spec.m <= 0 || spec.n <= 0) throw std::domain_error("generate: empty dimensions");
  if (spec.kind == EnsembleKind::columnRegular && (spec.sparsity < 1 || spec.sparsity > spec.m)) {
    throw std::domain_error("generate: columnRegular needs 1 <= c <= m");
  }
  if (spec.kind == EnsembleKind::rowRegular && (spec.sparsity < 1 || spec.sparsity > spec.n)) {
    throw std::domain_error("generate: rowRegular needs 1 <= s <= n");
  }
  Matrix a = Matrix::Zero(spec.m, spec.n);
  switch (spec.kind) {
    case EnsembleKind::denseRademacher:
      for (Index j = 0; j < spec.n; ++j) {
        SplitMix64 rng(substream(spec.seed, static_cast<std::uint64_t>(j)));
        for (Index i = 0; i < spec.m; ++i) a(i, j) = static_cast<double>(rng.next_sign());
      }
      break;
    case EnsembleKind::denseGaussian:
      for (Index j = 0; j < spec.n; ++j) {
        SplitMix64 rng(substream(spec.seed, static_cast<std::uint64_t>(j)));
        for (Index i = 0; i < spec.m; ++i) a(i, j) = rng.next_gaussian();
      }
      break;
    case EnsembleKind::columnRegular:
      for (Index j = 0; j < spec.n; ++j) {
        SplitMix64 rng(substream(spec.seed, static_cast<std::uint64_t>(j)));
        detail::fill_regular_slice(a.col(j).data(), 1, spec.m, spec.sparsity, rng);
      }
      break;
    case EnsembleKind::rowRegular:
      for (Index i = 0; i < spec.m; ++i) {
        SplitMix64 rng(substream(spec.seed, static_cast<std::uint64_t>(i)));
        detail::fill_regular_slice(a.data() + i, a.outerStride(), spec.n, spec.sparsity, rng);
      }
      break;
  }
  return a;
}

}  // namespace riplab

#endif  // RIPLAB_ENSEMBLES_HPP
