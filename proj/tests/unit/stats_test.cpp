#include "oracles.hpp"

#include "vcseffort/error.hpp"
#include "vcseffort/stats.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vcseffort;

namespace {

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, int hi) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(static_cast<double>(rng() % static_cast<unsigned>(hi)));
  return out;
}

} // namespace

TEST(Ks, StatisticMatchesPooledEcdfScan) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = draw(rng, 1 + rng() % 60, 1 + static_cast<int>(rng() % 30));
    auto b = draw(rng, 1 + rng() % 60, 1 + static_cast<int>(rng() % 30));
    auto r = ks_two_sample(a, b);
    EXPECT_EQ(r.d_statistic, oracle::ks_d(a, b));
    EXPECT_GT(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    EXPECT_EQ(r.n1, a.size());
    EXPECT_EQ(r.n2, b.size());
  }
}

TEST(Ks, ReferencePValues) {
  EXPECT_NEAR(ks_p_value(0.5, 10, 10), 0.11084033741322809, 1e-12);
  EXPECT_NEAR(ks_p_value(0.3, 40, 25), 0.10134718251547185, 1e-12);
  EXPECT_NEAR(ks_p_value(0.05, 100, 100), 0.9994802342883592, 1e-12);
  EXPECT_EQ(ks_p_value(0.0, 5, 5), 1.0);
}

TEST(Ks, PValueNonIncreasingInD) {
  for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{5, 7}, {30, 30}, {200, 13}}) {
    double prev = 1.0;
    for (int i = 0; i <= 1000; ++i) {
      double p = ks_p_value(i / 1000.0, n1, n2);
      EXPECT_LE(p, prev);
      EXPECT_GT(p, 0.0);
      prev = p;
    }
  }
}

TEST(Ks, IdenticalSamplesAndDisjointSamples) {
  std::vector<double> a = {1, 2, 3, 4}, b = {10, 11, 12};
  auto same = ks_two_sample(a, a);
  EXPECT_EQ(same.d_statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  auto apart = ks_two_sample(a, b);
  EXPECT_EQ(apart.d_statistic, 1.0);
  EXPECT_LT(apart.p_value, 0.05);
}

TEST(Ks, EmptySampleRejected) {
  std::vector<double> a = {1}, none;
  EXPECT_THROW(ks_two_sample(a, none), ParameterError);
}

TEST(Summary, QuartilesMatchSortedInterpolation) {
  auto s = summarize(std::vector<double>{3, 1, 4, 1, 5, 9, 2, 6});
  EXPECT_EQ(s.n, 8u);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.q1, 1.75);
  EXPECT_DOUBLE_EQ(s.median, 3.5);
  EXPECT_DOUBLE_EQ(s.q3, 5.25);
  EXPECT_DOUBLE_EQ(s.max, 9);
  EXPECT_DOUBLE_EQ(s.mean, 31.0 / 8);

  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    auto v = draw(rng, 1 + rng() % 50, 100);
    auto got = summarize(v);
    EXPECT_NEAR(got.q1, oracle::quantile(v, 0.25), 1e-9);
    EXPECT_NEAR(got.median, oracle::quantile(v, 0.5), 1e-9);
    EXPECT_NEAR(got.q3, oracle::quantile(v, 0.75), 1e-9);
  }
  EXPECT_EQ(summarize(std::vector<double>{}).n, 0u);
}

TEST(Representativeness, CutoffsAndInsufficientData) {
  ActivityByDeveloper all = {{"a", 0}, {"b", 1}, {"c", 5}, {"d", 9}, {"e", 20}};
  ActivityByDeveloper surveyed = {{"b", 1}, {"e", 20}};
  std::vector<std::uint32_t> cutoffs = {0, 2, 30};
  auto rows = representativeness_table(all, surveyed, cutoffs);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].all.n, 5u);
  EXPECT_EQ(rows[0].surveyed.n, 2u);
  ASSERT_TRUE(rows[0].ks);
  EXPECT_EQ(rows[0].ks->cutoff, 0u);
  EXPECT_EQ(rows[1].all.n, 3u);
  EXPECT_EQ(rows[1].surveyed.n, 1u);
  EXPECT_TRUE(rows[2].insufficient_data());

  ActivityByDeveloper stranger = {{"z", 3}};
  EXPECT_THROW(representativeness_table(all, stranger, cutoffs), ParameterError);
}
