#pragma once

#include <cstddef>
#include <vector>

#include "tec/tensor.hpp"

namespace tec {

/// Matrix of the k-th antisymmetric power of a square tensor, i.e. the
/// k-th compound of its unfolding. Rows and columns are indexed by the
/// k-subsets of {0, ..., n-1} in lexicographic order.
class CompoundRep {
 public:
  CompoundRep(std::size_t n, std::size_t k, Matrix entries);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// The compound as a square tensor of shape ([dim], [dim]).
  Tensor as_tensor() const;

 private:
  std::size_t n_;
  std::size_t k_;
  Matrix entries_;
};

/// Size caps for the compound oracle.
inline constexpr std::size_t kCompoundMaxN = 8;
inline constexpr std::size_t kCompoundMaxDim = 70;  // C(8, 4)

std::size_t binomial(std::size_t n, std::size_t k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k);

/// Entry (S, T) is det of the k x k submatrix of unfold(X) on rows S, cols T.
CompoundRep compound(const Tensor& x, std::size_t k);

struct CompoundNormReport {
  double compound_norm = 0;   // spectral norm of the compound
  double singular_product = 0;  // prod_{i<=k} lambda_i(|X|)
  double rel_error = 0;
  bool holds = false;
};

/// Checks ||X^{wedge k}|| = prod of the top-k singular values to 1e-8 relative.
CompoundNormReport compound_norm_check(const Tensor& x, std::size_t k);

}  // namespace tec
