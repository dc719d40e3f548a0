#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tec/antisym.hpp"
#include "tec/errors.hpp"
#include "tec/norms.hpp"
#include "tec/random_tensors.hpp"

using namespace tec;

namespace {

double rel(const Matrix& a, const Matrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Tensor diag_tensor(std::vector<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return Tensor(TensorShape::square({d.size()}), m);
}

}  // namespace

TEST(Subsets, LexicographicAndCounted) {
  EXPECT_EQ(binomial(8, 4), 70u);
  EXPECT_EQ(k_subsets(4, 2), oracle::subsets(4, 2));
  EXPECT_EQ(k_subsets(4, 2).front(), (std::vector<std::size_t>{0, 1}));
}

TEST(Compound, EdgeOrders) {
  Rng rng(51);
  const Tensor x = random_tensor(rng, TensorShape::square({4}));
  EXPECT_LE(rel(compound(x, 1).matrix(), x.unfolding()), 1e-15);
  const CompoundRep top = compound(x, 4);
  ASSERT_EQ(top.dim(), 1u);
  EXPECT_LE(std::abs(top.matrix()(0, 0) - x.unfolding().determinant()), 1e-12);
}

TEST(Compound, MatchesMinorOracle) {
  Rng rng(52);
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 4); ++k) {
      const Tensor x = random_tensor(rng, TensorShape::square({n}));
      EXPECT_LE(rel(compound(x, k).matrix(), oracle::compound(x.unfolding(), k)), 1e-12) << n << " " << k;
    }
}

TEST(Compound, DiagonalSpectrumIsSubsetProducts) {
  const Spectrum s = hermitian_eig(HermitianTensor(compound(diag_tensor({3, 2, 1}), 2).as_tensor()));
  ASSERT_EQ(s.eigenvalues.size(), 3);
  EXPECT_NEAR(s.eigenvalues(0), 6, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 3, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 2, 1e-14);
}

TEST(Compound, HigherOrderTensorsUseTheUnfolding) {
  Rng rng(53);
  const Tensor x = random_tensor(rng, TensorShape::square({2, 2}));
  EXPECT_LE(rel(compound(x, 2).matrix(), oracle::compound(x.unfolding(), 2)), 1e-12);
}

TEST(Compound, CapsAndArguments) {
  EXPECT_THROW(compound(Tensor(TensorShape::square({9})), 2), CapacityError);
  EXPECT_THROW(compound(Tensor(TensorShape::square({3})), 4), ArgumentError);
  EXPECT_THROW(compound(Tensor(TensorShape::square({3})), 0), ArgumentError);
  EXPECT_THROW(compound(Tensor(TensorShape({2}, {3})), 1), ShapeError);
}

TEST(CompoundFacts, AdjointProductAbsPowers) {
  Rng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = uniform_index(rng, 2, kCompoundMaxN);
    const std::size_t k = uniform_index(rng, 1, std::min<std::size_t>(n, 4));
    const TensorShape s = TensorShape::square({n});
    const Tensor x = random_tensor(rng, s), y = random_tensor(rng, s);
    const Matrix cx = compound(x, k).matrix();
    EXPECT_LE(rel(compound(conj_transpose(x), k).matrix(), cx.adjoint()), 1e-8);
    EXPECT_LE(rel(compound(einstein_product(x, y), k).matrix(), cx * compound(y, k).matrix()), 1e-8);
    EXPECT_LE(rel(compound(abs_tensor(x).tensor(), k).matrix(), abs_tensor(compound(x, k).as_tensor()).unfolding()),
              1e-8);

    const HermitianTensor c = random_positive(rng, s, 0.3, 2.5);
    const HermitianTensor cc(compound(c.tensor(), k).as_tensor());
    for (double p : {0.5, 2.0, 3.0}) {
      auto pw = [p](double v) { return std::pow(v, p); };
      EXPECT_LE(rel(compound(spectral_map(c, pw).tensor(), k).matrix(), spectral_map(cc, pw).unfolding()), 1e-8);
    }
    const Complex it(0, uniform(rng, -2, 2));
    EXPECT_LE(rel(compound(complex_power(c, it), k).matrix(), complex_power(cc, it).unfolding()), 1e-8);
  }
}

TEST(CompoundNorm, IdentityAndDiagonal) {
  EXPECT_NEAR(compound_norm_check(make_identity(TensorShape::square({5})).tensor(), 3).compound_norm, 1.0, 1e-14);
  const auto r = compound_norm_check(diag_tensor({4, 2}), 2);
  EXPECT_NEAR(r.compound_norm, 8.0, 1e-13);
  EXPECT_NEAR(r.singular_product, 8.0, 1e-13);
  EXPECT_TRUE(r.holds);
}

TEST(CompoundNorm, EqualsTopSingularProduct) {
  Rng rng(55);
  for (std::size_t k : {2u, 3u}) {
    const HermitianTensor h = random_hermitian(rng, TensorShape::square({4}), 2.0);
    const auto sv = oracle::singular_values(h.unfolding());
    double prod = 1;
    for (std::size_t i = 0; i < k; ++i) prod *= sv[i];
    const auto r = compound_norm_check(h.tensor(), k);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.compound_norm, prod, 1e-8 * prod);
    // enumeration: largest |product| over k-subsets of eigenvalues
    double best = 0;
    const RealVector ev = hermitian_eig(h).eigenvalues;
    for (const auto& sub : oracle::subsets(4, k)) {
      double p = 1;
      for (auto i : sub) p *= std::abs(ev(static_cast<Eigen::Index>(i)));
      best = std::max(best, p);
    }
    EXPECT_NEAR(r.compound_norm, best, 1e-8 * best);
  }
}
