#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "netgeo/sampling.hpp"

using namespace netgeo;

TEST(Sampling, SeedDerivationIsStableAndSpread) {
  EXPECT_EQ(derive_seed(42, 0), derive_seed(42, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(42, s));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  // First SplitMix64 output for state 0.
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Sampling, UnitIntervalAndExponential) {
  EXPECT_EQ(to_unit_interval(0), 0.0);
  EXPECT_LT(to_unit_interval(~0ULL), 1.0);
  EXPECT_EQ(exponential_from_uniform(0.0), 0.0);
  EXPECT_NEAR(exponential_from_uniform(0.5), std::log(2.0), 1e-16);
  EXPECT_TRUE(std::isfinite(exponential_from_uniform(to_unit_interval(~0ULL))));
}

TEST(Sampling, Primes) {
  const std::vector<int> p = first_primes(8);
  EXPECT_EQ(p, (std::vector<int>{2, 3, 5, 7, 11, 13, 17, 19}));
}

TEST(Halton, PointsAreUniformOnAverage) {
  ScrambledHalton h(6, 7);
  std::vector<double> x(6);
  std::vector<double> sum(6, 0.0);
  const int count = 1 << 14;
  for (int i = 0; i < count; ++i) {
    h.point(static_cast<std::uint64_t>(i), x);
    for (int d = 0; d < 6; ++d) {
      ASSERT_GE(x[static_cast<std::size_t>(d)], 0.0);
      ASSERT_LT(x[static_cast<std::size_t>(d)], 1.0);
      sum[static_cast<std::size_t>(d)] += x[static_cast<std::size_t>(d)];
    }
  }
  // Low discrepancy: the mean is far closer to 1/2 than 1/sqrt(12 N).
  for (double s : sum) EXPECT_NEAR(s / count, 0.5, 1e-3);
}

TEST(Halton, BaseTwoCoordinateStratifies) {
  // Each dyadic block of 2^k points puts exactly one point in each 1/2^k cell.
  ScrambledHalton h(1, 3);
  std::vector<double> x(1);
  std::set<int> cells;
  for (int i = 0; i < 64; ++i) {
    h.point(static_cast<std::uint64_t>(i), x);
    cells.insert(static_cast<int>(x[0] * 64));
  }
  EXPECT_EQ(cells.size(), 64u);
}

TEST(Halton, ScramblesDifferBySeed) {
  ScrambledHalton a(3, 1);
  ScrambledHalton b(3, 2);
  std::vector<double> xa(3);
  std::vector<double> xb(3);
  a.point(5, xa);
  b.point(5, xb);
  EXPECT_NE(xa, xb);
  ScrambledHalton c(3, 1);
  std::vector<double> xc(3);
  c.point(5, xc);
  EXPECT_EQ(xa, xc);
}
