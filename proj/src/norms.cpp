#include "tec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tec/errors.hpp"

namespace tec {

namespace {

void require_square(const Tensor& x) {
  if (!x.shape().is_square()) throw ShapeError("norms are defined on square tensors, got " + x.shape().to_string());
}

void require_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) {
    throw ArgumentError("Ky Fan index k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

RealVector singular_values(const Tensor& x) {
  require_square(x);
  Eigen::JacobiSVD<Matrix> svd(x.unfolding());
  return svd.singularValues();  // already descending
}

double ky_fan_norm(const Tensor& x, std::size_t k) {
  require_square(x);
  require_k(k, x.shape().unfold_rows());
  return gauge_rho(singular_values(x), k);
}

double spectral_norm(const Tensor& x) { return ky_fan_norm(x, 1); }

double schatten_norm(const Tensor& x, double p) {
  if (!(p >= 1) || !std::isfinite(p)) throw ArgumentError("Schatten p must be a finite value >= 1");
  const RealVector s = singular_values(x);
  const double top = s.size() ? s(0) : 0.0;
  if (top == 0) return 0.0;
  // Scale by the largest value so large p does not overflow.
  double acc = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double k_trace(const HermitianTensor& h, std::size_t k) {
  const Spectrum spec = hermitian_eig(h);
  const double scale = spec.eigenvalues.size() ? spec.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  if (spec.eigenvalues.size() && spec.eigenvalues.minCoeff() < -Spectrum::kRankTol * scale) {
    throw DomainError("k-trace needs a nonnegative Hermitian tensor");
  }
  if (k < 1 || k > spec.herm_rank) {
    throw ArgumentError("k-trace index k = " + std::to_string(k) + " outside [1, " + std::to_string(spec.herm_rank) +
                        "]");
  }
  // e_j recurrence over the eigenvalues: e_j <- e_j + lambda * e_{j-1}.
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lambda = std::max(spec.eigenvalues(i), 0.0);
    for (std::size_t j = k; j >= 1; --j) e[j] += lambda * e[j - 1];
  }
  return e[k];
}

double gauge_rho(std::span<const double> v, std::size_t k) {
  require_k(k, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw ArgumentError("gauge input must be nonnegative");
    if (i > 0 && v[i] > v[i - 1]) throw ArgumentError("gauge input must be sorted descending");
  }
  double sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += v[i];
  return sum;
}

double gauge_rho(const RealVector& v, std::size_t k) {
  return gauge_rho(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), k);
}

double evaluate_norm(const Tensor& x, const NormKind& kind) {
  struct Visitor {
    const Tensor& x;
    double operator()(const KyFan& n) const { return ky_fan_norm(x, n.k); }
    double operator()(const Schatten& n) const { return schatten_norm(x, n.p); }
    double operator()(const KTrace& n) const { return k_trace(HermitianTensor(x), n.k); }
    double operator()(const Spectral&) const { return spectral_norm(x); }
  };
  return std::visit(Visitor{x}, kind);
}

std::string to_string(const NormKind& kind) {
  struct Visitor {
    std::string operator()(const KyFan& n) const { return "ky_fan(" + std::to_string(n.k) + ")"; }
    std::string operator()(const Schatten& n) const { return "schatten(" + std::to_string(n.p) + ")"; }
    std::string operator()(const KTrace& n) const { return "k_trace(" + std::to_string(n.k) + ")"; }
    std::string operator()(const Spectral&) const { return "spectral"; }
  };
  return std::visit(Visitor{}, kind);
}

}  // namespace tec
