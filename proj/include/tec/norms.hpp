#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>

#include "tec/tensor.hpp"

namespace tec {

// Unitarily invariant norms of square tensors, all computed from the
// singular values of the unfolding.

/// Descending singular values of unfold(X), i.e. the eigenvalues of |X|.
RealVector singular_values(const Tensor& x);

/// Sum of the k largest singular values; k = 1 is the spectral norm.
double ky_fan_norm(const Tensor& x, std::size_t k);
double spectral_norm(const Tensor& x);

/// (Tr |X|^p)^(1/p), p >= 1.
double schatten_norm(const Tensor& x, double p);

/// Elementary symmetric polynomial e_k of the eigenvalues of a nonnegative
/// Hermitian tensor; 1 <= k <= herm_rank. Tr_1 is the trace norm.
double k_trace(const HermitianTensor& h, std::size_t k);

/// Ky Fan gauge: sum of the k largest entries of a nonnegative descending
/// vector.
double gauge_rho(std::span<const double> v, std::size_t k);
double gauge_rho(const RealVector& v, std::size_t k);

struct KyFan {
  std::size_t k;
};
struct Schatten {
  double p;
};
struct KTrace {
  std::size_t k;
};
struct Spectral {};

/// Tag for a norm choice carried through experiment configs.
using NormKind = std::variant<KyFan, Schatten, KTrace, Spectral>;

/// Evaluates a norm; KTrace requires a Hermitian input.
double evaluate_norm(const Tensor& x, const NormKind& kind);
std::string to_string(const NormKind& kind);

}  // namespace tec
