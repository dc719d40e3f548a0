#include "tec/antisym.hpp"

#include <algorithm>
#include <cmath>

#include "tec/errors.hpp"
#include "tec/norms.hpp"

namespace tec {

CompoundRep::CompoundRep(std::size_t n, std::size_t k, Matrix entries) : n_(n), k_(k), entries_(std::move(entries)) {
  if (static_cast<std::size_t>(entries_.rows()) != binomial(n, k) || entries_.rows() != entries_.cols()) {
    throw ShapeError("compound matrix must be C(n,k) x C(n,k)");
  }
}

Tensor CompoundRep::as_tensor() const { return {TensorShape::square({dim()}), entries_}; }

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    // Advance the rightmost index that still has room.
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

CompoundRep compound(const Tensor& x, std::size_t k) {
  if (!x.shape().is_square()) throw ShapeError("compound needs a square tensor");
  const std::size_t n = x.shape().unfold_rows();
  if (k < 1 || k > n) throw ArgumentError("compound order k = " + std::to_string(k) + " outside [1, n]");
  if (n > kCompoundMaxN || binomial(n, k) > kCompoundMaxDim) {
    throw CapacityError("compound oracle capped at n <= 8 and C(n,k) <= 70");
  }

  const auto subsets = k_subsets(n, k);
  const auto dim = static_cast<Eigen::Index>(subsets.size());
  const auto kk = static_cast<Eigen::Index>(k);
  Matrix out(dim, dim);
  Matrix sub(kk, kk);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = 0; j < kk; ++j)
          sub(i, j) = x.unfolding()(static_cast<Eigen::Index>(subsets[a][i]), static_cast<Eigen::Index>(subsets[b][j]));
      out(a, b) = sub.determinant();
    }
  }
  return {n, k, std::move(out)};
}

CompoundNormReport compound_norm_check(const Tensor& x, std::size_t k) {
  const CompoundRep c = compound(x, k);
  const RealVector s = singular_values(x);
  CompoundNormReport r;
  r.compound_norm = spectral_norm(c.as_tensor());
  r.singular_product = s.head(static_cast<Eigen::Index>(k)).prod();
  const double scale = std::max(std::abs(r.singular_product), 1e-300);
  r.rel_error = std::abs(r.compound_norm - r.singular_product) / scale;
  r.holds = r.rel_error <= 1e-8 || std::abs(r.compound_norm - r.singular_product) <= 1e-14;
  return r;
}

}  // namespace tec
