#include <gtest/gtest.h>

#include "tec/errors.hpp"
#include "tec/majorization.hpp"
#include "tec/norms.hpp"
#include "tec/random_tensors.hpp"

using namespace tec;

namespace {

SortedVec sv(std::vector<double> v) { return SortedVec::sorted(std::move(v)); }

}  // namespace

TEST(SortedVec, EnforcesOrder) {
  EXPECT_THROW(SortedVec({1, 2}), ArgumentError);
  EXPECT_NO_THROW(SortedVec({2, 1}));
  EXPECT_EQ(SortedVec::sorted({1, 3, 2}).entries(), (std::vector<double>{3, 2, 1}));
  EXPECT_TRUE(SortedVec({2, 1}).all_positive());
  EXPECT_FALSE(SortedVec({2, 0}).all_positive());
}

TEST(WeakMajorization, ClassicPairs) {
  EXPECT_TRUE(weak_majorizes(sv({2, 0}), sv({1, 1})));
  EXPECT_TRUE(weak_majorizes(sv({1, 2}), sv({1, 2})));
  const auto r = weak_majorizes(sv({2, 1}), sv({3, 0}));
  EXPECT_FALSE(r);
  ASSERT_TRUE(r.failing_k.has_value());
  EXPECT_EQ(*r.failing_k, 1u);
}

TEST(WeakMajorization, LengthMismatchThrows) { EXPECT_THROW(weak_majorizes(sv({1}), sv({1, 0})), ArgumentError); }

TEST(Majorization, FourPredicatesOnFixedPairs) {
  // x = (2, 2), y = (4, 1): partial sums 2 <= 4, 4 <= 5; totals differ.
  // partial products 2 <= 4, 4 <= 4; totals agree.
  const SortedVec y = sv({4, 1}), x = sv({2, 2});
  EXPECT_TRUE(weak_majorizes(y, x));
  EXPECT_FALSE(majorizes(y, x));
  EXPECT_TRUE(weak_log_majorizes(y, x));
  EXPECT_TRUE(log_majorizes(y, x));

  // x = (1, 1, 1), y = (3, 1, 1/3): products 1, 1, 1 against 3, 3, 1.
  const SortedVec y3 = sv({3, 1, 1.0 / 3}), x3 = sv({1, 1, 1});
  EXPECT_TRUE(weak_log_majorizes(y3, x3));
  EXPECT_TRUE(log_majorizes(y3, x3));
  EXPECT_TRUE(weak_majorizes(y3, x3));
  EXPECT_FALSE(majorizes(y3, x3));
}

TEST(Majorization, IdenticalVectorsSatisfyAll) {
  const SortedVec v = sv({5, 2, 0.5});
  EXPECT_TRUE(weak_majorizes(v, v));
  EXPECT_TRUE(majorizes(v, v));
  EXPECT_TRUE(weak_log_majorizes(v, v));
  EXPECT_TRUE(log_majorizes(v, v));
}

TEST(Majorization, LogVariantsNeedPositiveEntries) {
  EXPECT_THROW(weak_log_majorizes(sv({1, 0}), sv({1, 1})), DomainError);
  EXPECT_THROW(log_majorizes(sv({1, 1}), sv({1, -1})), DomainError);
}

TEST(Majorization, LogImpliesWeakLogImpliesWeak) {
  Rng rng(41);
  int log_hits = 0, weak_log_hits = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t n = uniform_index(rng, 1, 4);
    RealVector a(static_cast<Eigen::Index>(n)), b(static_cast<Eigen::Index>(n));
    for (auto& v : a) v = uniform(rng, 0.1, 3);
    for (auto& v : b) v = uniform(rng, 0.1, 3);
    // Half the pairs are log-majorized by construction: log x = D log y.
    if (trial % 2 == 0) b = (random_doubly_stochastic(rng, n) * a.array().log().matrix()).array().exp();
    const SortedVec y = SortedVec::from(a), x = SortedVec::from(b);
    if (log_majorizes(y, x)) {
      ++log_hits;
      EXPECT_TRUE(weak_log_majorizes(y, x));
    }
    if (weak_log_majorizes(y, x)) {
      ++weak_log_hits;
      EXPECT_TRUE(weak_majorizes(y, x));
    }
  }
  EXPECT_GE(log_hits, 10000);
  EXPECT_GT(weak_log_hits, log_hits);
}

TEST(Majorization, KyFanEigenvalueSum) {
  // lambda(X + Y) is weakly majorized by lambda(X) + lambda(Y).
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const TensorShape s = TensorShape::square({3});
    const HermitianTensor x = random_hermitian(rng, s, 2), y = random_hermitian(rng, s, 2);
    const RealVector sum = hermitian_eig(x).eigenvalues + hermitian_eig(y).eigenvalues;
    EXPECT_TRUE(majorizes(SortedVec::from(sum), SortedVec::from(hermitian_eig(x + y).eigenvalues)));
  }
}

TEST(KyFanSum, SingleTensorIsEquality) {
  Rng rng(43);
  const Tensor x = random_tensor(rng, TensorShape::square({3}));
  const std::vector<Tensor> one{x};
  const auto r = check_kyfan_sum_inequality(one, 2.0, 2);
  EXPECT_NEAR(r.lhs, r.rhs, 1e-12 * r.rhs);
  EXPECT_TRUE(r.holds);
}

TEST(KyFanSum, CancellingPairGivesZero) {
  Rng rng(44);
  const Tensor x = random_tensor(rng, TensorShape::square({2, 2}));
  const std::vector<Tensor> pair{x, -1.0 * x};
  const auto r = check_kyfan_sum_inequality(pair, 1.0, 3);
  EXPECT_NEAR(r.lhs, 0, 1e-14);
  EXPECT_TRUE(r.holds);
}

TEST(KyFanSum, RandomBatchesHold) {
  Rng rng(45);
  for (int trial = 0; trial < 10000; ++trial) {
    const TensorShape s = pick_shape(rng, {{1}, {2}, {3}});
    std::vector<Tensor> ts(uniform_index(rng, 1, 4), Tensor(s));
    for (auto& t : ts) t = random_tensor(rng, s);
    const double p = static_cast<double>(uniform_index(rng, 1, 3));
    const auto r = check_kyfan_sum_inequality(ts, p, uniform_index(rng, 1, s.unfold_rows()));
    ASSERT_TRUE(r.holds) << "trial " << trial << ": " << r.lhs << " > " << r.rhs;
  }
}

TEST(KyFanSum, ShapeMismatchThrows) {
  const std::vector<Tensor> ts{Tensor(TensorShape::square({2})), Tensor(TensorShape::square({3}))};
  EXPECT_THROW(check_kyfan_sum_inequality(ts, 1, 1), ShapeError);
}
