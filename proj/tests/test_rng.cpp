#include "bosim/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

using bosim::RngStream;

TEST(RngStream, SameSeedSameStream) {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DifferentSeedsDiverge) {
  RngStream a(1);
  RngStream b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += a.next_u64() == b.next_u64();
  EXPECT_LT(equal, 4);
}

TEST(RngStream, ForSampleIsDeterministicPerIndex) {
  RngStream a = RngStream::for_sample(7, 3);
  RngStream b = RngStream::for_sample(7, 3);
  for (int i = 0; i < 32; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, ForSampleSeparatesIndicesAndSeeds) {
  const auto first = [](RngStream s) { return s.next_u64(); };
  EXPECT_NE(first(RngStream::for_sample(7, 0)), first(RngStream::for_sample(7, 1)));
  EXPECT_NE(first(RngStream::for_sample(7, 0)), first(RngStream::for_sample(8, 0)));
  EXPECT_NE(first(RngStream::for_sample(7, 1)), first(RngStream::for_sample(8, 0)));
}

TEST(RngStream, Uniform01RangeAndMean) {
  RngStream rng(11);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const double x = rng.uniform01();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / draws, 0.5, 0.01);
}

TEST(RngStream, UniformBelowStaysInRangeAndIsUnbiased) {
  RngStream rng(13);
  EXPECT_EQ(rng.uniform_below(1), 0u);
  std::vector<int> counts(4, 0);
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t x = rng.uniform_below(4);
    ASSERT_LT(x, 4u);
    ++counts[static_cast<std::size_t>(x)];
  }
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / draws, 0.25, 0.02);
}

TEST(RngStream, GaussianPairMoments) {
  RngStream rng(17);
  double sum = 0.0;
  double sum_sq = 0.0;
  const int pairs = 20000;
  for (int i = 0; i < pairs; ++i) {
    const std::complex<double> g = rng.gaussian_pair();
    sum += g.real() + g.imag();
    sum_sq += g.real() * g.real() + g.imag() * g.imag();
  }
  const double count = 2.0 * pairs;
  EXPECT_NEAR(sum / count, 0.0, 0.02);
  EXPECT_NEAR(sum_sq / count, 1.0, 0.05);
}

TEST(RngStream, PermutationIsBijective) {
  RngStream rng(23);
  for (int n : {1, 2, 5, 20}) {
    std::vector<int> p = rng.permutation(n);
    ASSERT_EQ(static_cast<int>(p.size()), n);
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
  }
}

TEST(RngStream, PermutationIsUniformOverS3) {
  RngStream rng(29);
  std::map<std::vector<int>, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[rng.permutation(3)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, count] : counts)
    EXPECT_NEAR(static_cast<double>(count) / draws, 1.0 / 6.0, 0.01);
}
