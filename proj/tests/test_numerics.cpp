#include <bandwagon/errors.hpp>
#include <bandwagon/numerics.hpp>
#include <bandwagon/signed_graph.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace bandwagon;

TEST(SymmetricEigenvalues, Identity) {
  RealMatrix eye(3, 3, 0.0);
  for (std::size_t i = 0; i < 3; ++i) eye(i, i) = 1.0;
  EXPECT_EQ(symmetric_eigenvalues(eye).eigenvalues, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(SymmetricEigenvalues, ExampleStarOverThree) {
  const AppraisalMatrix x{{1, 1, -1}, {1, 1, 1}, {-1, 1, 1}};
  const auto s = symmetric_eigenvalues(to_real(x, 1.0 / 3.0));
  ASSERT_EQ(s.eigenvalues.size(), 3U);
  EXPECT_NEAR(s.eigenvalues[0], -1.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.eigenvalues[1], 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(s.eigenvalues[2], 2.0 / 3.0, 1e-9);
}

TEST(SymmetricEigenvalues, ScaledOuterProduct) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::int8_t> p(8);
    for (auto& s : p) s = (rng() & 1U) ? 1 : -1;
    const auto s = symmetric_eigenvalues(to_real(FactionVector(p).outer(), 1.0 / 8.0));
    for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(s.eigenvalues[i], 0.0, 1e-9);
    EXPECT_NEAR(s.eigenvalues[7], 1.0, 1e-9);
  }
}

TEST(SymmetricEigenvalues, RejectsNonSymmetricAndNonSquare) {
  EXPECT_THROW(symmetric_eigenvalues(RealMatrix{{1.0, 2.0}, {0.0, 1.0}}), InvalidInput);
  EXPECT_THROW(symmetric_eigenvalues(RealMatrix(2, 3)), InvalidInput);
  EXPECT_NO_THROW(symmetric_eigenvalues(RealMatrix{{1.0, 2.0}, {2.0 + 1e-13, 1.0}}));
}

TEST(SymmetricEigenvalues, ZeroAndOneByOne) {
  EXPECT_EQ(symmetric_eigenvalues(RealMatrix(4, 4, 0.0)).eigenvalues, std::vector<double>(4, 0.0));
  EXPECT_EQ(symmetric_eigenvalues(RealMatrix{{-2.5}}).eigenvalues, std::vector<double>{-2.5});
}

TEST(SymmetricEigenvalues, MatchesClosedFormTwoAndThree) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int rep = 0; rep < 500; ++rep) {
    const double a = normal(rng);
    const double b = normal(rng);
    const double d = normal(rng);
    const auto expected2 = oracle::eigenvalues_2x2(a, b, d);
    const auto got2 = symmetric_eigenvalues(RealMatrix{{a, b}, {b, d}});
    EXPECT_NEAR(got2.eigenvalues[0], expected2[0], 1e-9);
    EXPECT_NEAR(got2.eigenvalues[1], expected2[1], 1e-9);

    RealMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) m(i, j) = m(j, i) = normal(rng);
    }
    const auto expected3 = oracle::eigenvalues_3x3(m);
    const auto got3 = symmetric_eigenvalues(m);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got3.eigenvalues[k], expected3[k], 1e-9);
  }
}

TEST(SymmetricEigenvalues, SumEqualsTrace) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng() % 60;
    RealMatrix m(n, n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = normal(rng);
      trace += m(i, i);
    }
    double sum = 0.0;
    for (double v : symmetric_eigenvalues(m).eigenvalues) sum += v;
    EXPECT_NEAR(sum, trace, 1e-9 * static_cast<double>(n));
  }
}

TEST(SymmetricEigenvalues, LargeSignMatrixStaysAccurate) {
  // N = 200: top eigenvalue of pp^T / N is 1 and the rest vanish.
  std::mt19937_64 rng(24);
  std::vector<std::int8_t> p(200);
  for (auto& s : p) s = (rng() & 1U) ? 1 : -1;
  const auto s = symmetric_eigenvalues(to_real(FactionVector(p).outer(), 1.0 / 200.0));
  EXPECT_NEAR(s.largest(), 1.0, 1e-9);
  EXPECT_NEAR(s.eigenvalues[198], 0.0, 1e-9);
  EXPECT_NEAR(s.smallest(), 0.0, 1e-9);
}

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(RealMatrix(3, 4, 0.0)), 0U);
  const FactionVector p({1, -1, 1, 1, -1});
  EXPECT_EQ(numerical_rank(to_real(p.outer())), 1U);

  const AppraisalMatrix x{{1, 1, -1}, {1, 1, 1}, {-1, 1, 1}};
  ASSERT_EQ(oracle::det3(x.entries()), -4);
  EXPECT_EQ(numerical_rank(to_real(x)), 3U);
}

TEST(NumericalRank, RectangularAndExplicitTolerance) {
  const RealMatrix m{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}};
  EXPECT_EQ(numerical_rank(m), 1U);
  const RealMatrix near{{1.0, 0.0}, {0.0, 1e-6}};
  EXPECT_EQ(numerical_rank(near), 2U);
  EXPECT_EQ(numerical_rank(near, 1e-3), 1U);
  EXPECT_THROW(numerical_rank(near, 0.0), InvalidInput);
  EXPECT_THROW(numerical_rank(near, -1.0), InvalidInput);
}

TEST(NumericalRank, AgreesWithExactRankOnRandomS1) {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 1 + rng() % 7;
    const auto entries = oracle::random_s1(rng, n, 0.3);
    EXPECT_EQ(numerical_rank(to_real(AppraisalMatrix(entries))), oracle::exact_rank(entries));
  }
}
