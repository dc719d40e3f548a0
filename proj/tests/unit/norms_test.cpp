#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tec/errors.hpp"
#include "tec/norms.hpp"
#include "tec/random_tensors.hpp"

using namespace tec;

namespace {

Tensor diag_tensor(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return Tensor(TensorShape::square({d.size()}), m);
}

}  // namespace

TEST(SingularValues, IdentityAndNegatedIdentity) {
  const Tensor id = make_identity(TensorShape::square({2, 2})).tensor();
  EXPECT_TRUE(singular_values(id).isApprox(RealVector::Ones(4)));
  EXPECT_TRUE(singular_values(-1.0 * id).isApprox(RealVector::Ones(4)));
}

TEST(SingularValues, MatchGramEigenvalues) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const Tensor x = random_tensor(rng, TensorShape::square({2, 3}));
    const auto want = oracle::singular_values(x.unfolding());
    const RealVector got = singular_values(x);
    for (std::size_t j = 0; j < want.size(); ++j) EXPECT_NEAR(got(static_cast<Eigen::Index>(j)), want[j], 1e-9);
  }
}

TEST(KyFan, KnownValues) {
  EXPECT_NEAR(ky_fan_norm(make_identity(TensorShape::square({3})).tensor(), 3), 3.0, 1e-15);
  EXPECT_NEAR(ky_fan_norm(diag_tensor({5, -7, 1}), 1), 7.0, 1e-15);
  EXPECT_NEAR(spectral_norm(diag_tensor({5, -7, 1})), 7.0, 1e-15);
  EXPECT_THROW(ky_fan_norm(diag_tensor({1, 2}), 3), ArgumentError);
  EXPECT_THROW(ky_fan_norm(diag_tensor({1, 2}), 0), ArgumentError);
}

TEST(KyFan, TriangleInequalityAndOrdering) {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const TensorShape s = TensorShape::square({3, 2});
    const Tensor x = random_tensor(rng, s), y = random_tensor(rng, s);
    const std::size_t k = uniform_index(rng, 1, 6);
    EXPECT_LE(ky_fan_norm(x + y, k), (ky_fan_norm(x, k) + ky_fan_norm(y, k)) * (1 + 1e-12));
    if (k > 1) EXPECT_GE(ky_fan_norm(x, k), ky_fan_norm(x, k - 1));
    EXPECT_NEAR(ky_fan_norm(x, k), oracle::top_k_sum(oracle::singular_values(x.unfolding()), k), 1e-9);
  }
}

TEST(Schatten, IdentityAndLargePLimit) {
  EXPECT_NEAR(schatten_norm(make_identity(TensorShape::square({4})).tensor(), 1), 4.0, 1e-14);
  EXPECT_NEAR(schatten_norm(make_identity(TensorShape::square({4})).tensor(), 2), 2.0, 1e-14);
  Rng rng(33);
  for (int i = 0; i < 20; ++i) {
    const Tensor x = random_tensor(rng, TensorShape::square({3}));
    const double s64 = schatten_norm(x, 64), top = ky_fan_norm(x, 1);
    EXPECT_GE(s64, top * (1 - 1e-12));
    EXPECT_LE(s64, top * 1.02);
  }
  EXPECT_THROW(schatten_norm(diag_tensor({1}), 0.5), ArgumentError);
}

TEST(KTrace, MatchesSubsetEnumeration) {
  // e_2(3, 2, 1) = 11
  EXPECT_NEAR(k_trace(HermitianTensor(diag_tensor({3, 2, 1})), 2), 11.0, 1e-13);
  EXPECT_NEAR(k_trace(HermitianTensor(diag_tensor({3, 2, 1})), 1), 6.0, 1e-13);
  Rng rng(34);
  const HermitianTensor p = random_positive(rng, TensorShape::square({5}), 0.2, 2.0);
  const RealVector ev = hermitian_eig(p).eigenvalues;
  const std::vector<double> v(ev.data(), ev.data() + ev.size());
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(k_trace(p, k), oracle::elementary_symmetric(v, k), 1e-10);
}

TEST(KTrace, RejectsIndefiniteOrRankDeficient) {
  EXPECT_THROW(k_trace(HermitianTensor(diag_tensor({1, -1})), 1), DomainError);
  EXPECT_THROW(k_trace(HermitianTensor(diag_tensor({1, 0})), 2), ArgumentError);
}

TEST(Gauge, KyFanGauge) {
  const std::vector<double> v{3, 2, 1};
  EXPECT_DOUBLE_EQ(gauge_rho(std::span<const double>(v), 2), 5.0);
  const std::vector<double> z{0, 0, 0};
  EXPECT_DOUBLE_EQ(gauge_rho(std::span<const double>(z), 3), 0.0);
}

TEST(Gauge, HolderExtension) {
  // rho(prod_i b_i^{alpha_i}) <= prod_i rho(b_i)^{alpha_i}, sum alpha = 1
  Rng rng(35);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = uniform_index(rng, 1, 6), m = uniform_index(rng, 1, 4), k = uniform_index(rng, 1, n);
    std::vector<double> alpha(m);
    double total = 0;
    for (auto& a : alpha) total += a = uniform(rng, 0.05, 1);
    std::vector<double> prod(n, 1.0);
    double rhs = 1;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> b(n);
      for (auto& x : b) x = uniform(rng, 0, 4);
      for (std::size_t i = 0; i < n; ++i) prod[i] *= std::pow(b[i], alpha[j] / total);
      std::sort(b.begin(), b.end(), std::greater<>());
      rhs *= std::pow(gauge_rho(std::span<const double>(b), k), alpha[j] / total);
    }
    std::sort(prod.begin(), prod.end(), std::greater<>());
    EXPECT_LE(gauge_rho(std::span<const double>(prod), k), rhs * (1 + 1e-12));
  }
}

TEST(NormKind, DispatchesAndNames) {
  const Tensor d = diag_tensor({3, -2, 1});
  EXPECT_NEAR(evaluate_norm(d, KyFan{2}), 5.0, 1e-14);
  EXPECT_NEAR(evaluate_norm(d, Spectral{}), 3.0, 1e-14);
  EXPECT_NEAR(evaluate_norm(d, Schatten{1}), 6.0, 1e-14);
  EXPECT_NEAR(evaluate_norm(diag_tensor({3, 2, 1}), KTrace{2}), 11.0, 1e-13);
  EXPECT_FALSE(to_string(NormKind{KyFan{2}}).empty());
}

TEST(Norms, UnitaryInvariance) {
  Rng rng(36);
  const Tensor x = random_tensor(rng, TensorShape::square({4}));
  const Tensor u(TensorShape::square({4}), random_unitary(rng, 4));
  const Tensor v(TensorShape::square({4}), random_unitary(rng, 4));
  const Tensor y = einstein_product(einstein_product(u, x), v);
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_NEAR(ky_fan_norm(y, k), ky_fan_norm(x, k), 1e-12);
  EXPECT_NEAR(schatten_norm(y, 3), schatten_norm(x, 3), 1e-12);
}
