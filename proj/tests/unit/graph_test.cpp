#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tec/errors.hpp"
#include "tec/graph.hpp"
#include "tec/runner.hpp"

using namespace tec;

namespace {

// numpy eigvalsh of the normalized adjacency (tests/support/oracle.py)
constexpr double kLambdaK4 = 0.33333333333333331;
constexpr double kLambdaC5 = 0.80901699437494745;

}  // namespace

TEST(RegularGraph, Validation) {
  IntMatrix asym(2, 2);
  asym << 0, 1, 0, 0;
  EXPECT_THROW(RegularGraph{asym}, ArgumentError);
  IntMatrix irregular(3, 3);
  irregular << 0, 1, 1, 1, 0, 0, 1, 0, 0;
  EXPECT_THROW(RegularGraph{irregular}, ArgumentError);
  IntMatrix negative(2, 2);
  negative << 2, -1, -1, 2;
  EXPECT_THROW(RegularGraph{negative}, ArgumentError);
  IntMatrix loop(1, 1);
  loop << 2;
  EXPECT_EQ(RegularGraph(loop).degree(), 2u);
}

TEST(RegularGraph, SlotsFollowMultiplicity) {
  IntMatrix a(2, 2);
  a << 1, 2, 2, 1;
  const RegularGraph g(a);
  EXPECT_EQ(g.degree(), 3u);
  int to_other = 0;
  for (std::size_t s = 0; s < 3; ++s) to_other += g.neighbor(0, s) == 1;
  EXPECT_EQ(to_other, 2);
}

TEST(NormalizedAdjacency, CompleteOnTwoVertices) {
  const Eigen::MatrixXd a = normalized_adjacency(gen_complete(2));
  Eigen::MatrixXd want(2, 2);
  want << 0, 1, 1, 0;
  EXPECT_EQ(a, want);
}

TEST(NormalizedAdjacency, DoublyStochasticWithUnitSpectrumBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RegularGraph g = gen_random_regular(20, 5, seed);
    const Eigen::MatrixXd a = normalized_adjacency(g);
    EXPECT_TRUE(a.isApprox(a.transpose()));
    EXPECT_TRUE(a.rowwise().sum().isApprox(Eigen::VectorXd::Ones(20)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    EXPECT_NEAR(es.eigenvalues().maxCoeff(), 1.0, 1e-12);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1 - 1e-12);
  }
}

TEST(SpectralExpansion, NamedGraphs) {
  EXPECT_NEAR(spectral_expansion(gen_complete(4)), kLambdaK4, 1e-12);
  EXPECT_NEAR(spectral_expansion(gen_cycle(5)), kLambdaC5, 1e-12);
  EXPECT_NEAR(spectral_expansion(gen_cycle(4)), 1.0, 1e-12);
  EXPECT_NEAR(spectral_expansion(gen_hypercube(3)), 1.0, 1e-12);
  IntMatrix loop(1, 1);
  loop << 3;
  EXPECT_EQ(spectral_expansion(RegularGraph(loop)), 0.0);
}

TEST(SpectralExpansion, BoundsRandomOrthogonalVectors) {
  const RegularGraph g = gen_random_regular(30, 4, 9);
  const double lambda = spectral_expansion(g);
  const Eigen::MatrixXd a = normalized_adjacency(g);
  Rng rng(71);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x(30);
    for (auto& v : x) v = normal(rng);
    x.array() -= x.mean();
    EXPECT_LE((a * x).norm(), (lambda + 1e-12) * x.norm());
  }
}

TEST(Generators, ShapesAndDegrees) {
  EXPECT_EQ(gen_cycle(5).degree(), 2u);
  EXPECT_EQ(gen_cycle(5).n(), 5u);
  EXPECT_EQ(gen_complete(4).degree(), 3u);
  EXPECT_EQ(gen_hypercube(3).n(), 8u);
  EXPECT_EQ(gen_hypercube(3).degree(), 3u);
  EXPECT_EQ(gen_complete(4).name(), "K4");
  EXPECT_EQ(gen_cycle(5).name(), "C5");
  EXPECT_EQ(gen_hypercube(3).name(), "Q3");
  EXPECT_THROW(gen_cycle(2), ArgumentError);
  EXPECT_THROW(gen_complete(1), ArgumentError);
  EXPECT_THROW(gen_random_regular(5, 3, 1), ArgumentError);  // n d odd
}

TEST(Generators, RandomRegularIsDeterministicInSeed) {
  const RegularGraph a = gen_random_regular(50, 6, 1), b = gen_random_regular(50, 6, 1);
  EXPECT_EQ(a.adjacency(), b.adjacency());
  EXPECT_EQ(a.degree(), 6u);
  EXPECT_NE(a.adjacency(), gen_random_regular(50, 6, 2).adjacency());
  EXPECT_EQ(gen_random_regular(10, 3, 4).degree(), 3u);
}

TEST(Walk, TwoVertexWalkAlternates) {
  const WalkSample w = sample_walk(gen_complete(2), 3, 5);
  ASSERT_EQ(w.length(), 3u);
  EXPECT_NE(w.vertices[0], w.vertices[1]);
  EXPECT_EQ(w.vertices[0], w.vertices[2]);
  EXPECT_THROW(sample_walk(gen_complete(2), 0, 1), ArgumentError);
}

TEST(Walk, DeterministicAndAdjacent) {
  const RegularGraph g = gen_random_regular(12, 4, 3);
  const WalkSample a = sample_walk(g, 20, 42), b = sample_walk(g, 20, 42);
  EXPECT_EQ(a.vertices, b.vertices);
  for (std::size_t j = 0; j + 1 < a.length(); ++j)
    EXPECT_GT(g.adjacency()(static_cast<long>(a.vertices[j]), static_cast<long>(a.vertices[j + 1])), 0);
}

TEST(Walk, StartIsUniform) {
  const RegularGraph g = gen_cycle(5);
  std::vector<std::size_t> counts(5, 0);
  for (std::size_t i = 0; i < 100000; ++i) ++counts[sample_walk(g, 1, derive_seed(7, i)).vertices[0]];
  EXPECT_LE(chi_square_uniform(counts), chi_square_quantile(4));
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c), 20000.0, 3 * std::sqrt(20000.0 * 0.8));
}

TEST(Walk, TwoStepJointMatchesTransitions) {
  // P(v1 = u, v2 = w) = A(u, w) / (n d)
  IntMatrix a(3, 3);
  a << 1, 2, 0, 2, 0, 1, 0, 1, 2;
  const RegularGraph g(a);
  const std::size_t walks = 90000;
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(3, 3);
  for (std::size_t i = 0; i < walks; ++i) {
    const auto w = sample_walk(g, 2, derive_seed(8, i));
    counts(static_cast<long>(w.vertices[0]), static_cast<long>(w.vertices[1])) += 1;
  }
  for (long u = 0; u < 3; ++u)
    for (long v = 0; v < 3; ++v) {
      const double p = static_cast<double>(a(u, v)) / 9.0;
      const double sd = std::sqrt(walks * p * (1 - p));
      EXPECT_NEAR(counts(u, v), walks * p, 4 * sd + 1e-9) << u << "," << v;
    }
}

TEST(ChiSquare, QuantileIsSane) {
  // Wilson-Hilferty at z = 4.75 sits far in the upper tail.
  EXPECT_GT(chi_square_quantile(4), 20.0);
  EXPECT_LT(chi_square_quantile(4), 40.0);
  EXPECT_DOUBLE_EQ(chi_square_uniform({10, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(chi_square_uniform({20, 0}), 20.0);
}

TEST(EdgeList, RoundTrip) {
  const RegularGraph g = gen_random_regular(10, 4, 2);
  std::stringstream ss;
  write_edge_list(ss, g);
  EXPECT_EQ(read_edge_list(ss).adjacency(), g.adjacency());
}

TEST(EdgeList, ErrorsCarryLocation) {
  std::stringstream bad("# triangle\n3 2\n0 1 1\n1 2 1\n0 x 1\n");
  try {
    read_edge_list(bad, "tri.txt");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("tri.txt:5"), std::string::npos) << e.what();
  }
  std::stringstream irregular("3 2\n0 1 1\n");
  EXPECT_THROW(read_edge_list(irregular), ConfigError);
  std::stringstream out_of_range("2 1\n0 2 1\n");
  EXPECT_THROW(read_edge_list(out_of_range), ConfigError);
}
