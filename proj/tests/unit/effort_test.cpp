#include "oracles.hpp"

#include "vcseffort/effort.hpp"
#include "vcseffort/error.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <random>

using namespace vcseffort;

namespace {

ActivityMatrix random_matrix(std::mt19937_64& rng, std::size_t devs, std::size_t periods, int months) {
  std::vector<DeveloperId> ids;
  for (std::size_t d = 0; d < devs; ++d)
    ids.push_back("d" + std::to_string(d));
  std::vector<Period> ps;
  for (std::size_t p = 0; p < periods; ++p)
    ps.push_back({"p" + std::to_string(p), static_cast<UnixSeconds>(p * 100),
                  static_cast<UnixSeconds>(p * 100 + 100)});
  std::vector<std::uint32_t> cells(devs * periods);
  for (auto& c : cells)
    c = rng() % 3 == 0 ? 0 : static_cast<std::uint32_t>(rng() % 60);
  return ActivityMatrix(ids, ps, ActivityMetric::Commits, months, cells, 0);
}

} // namespace

TEST(Effort, DeveloperEffortSaturates) {
  EXPECT_EQ(developer_effort(12, 10, 1), PersonMonths(1));
  EXPECT_EQ(developer_effort(10, 10, 6), PersonMonths(6));
  EXPECT_EQ(developer_effort(3, 10, 6), PersonMonths(18, 10));
  EXPECT_EQ(developer_effort(0, 10, 6), PersonMonths(0));
  EXPECT_THROW(developer_effort(1, 0, 6), ParameterError);
  EXPECT_THROW(developer_effort(1, 1, 0), ParameterError);
}

TEST(Effort, TotalsMatchSummationOracle) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    int months = 1 + static_cast<int>(rng() % 6);
    auto m = random_matrix(rng, 1 + rng() % 30, 1 + rng() % 6, months);
    int theta = 1 + static_cast<int>(rng() % 50);
    auto r = project_effort(m, theta);
    std::vector<std::uint32_t> all(m.cells().begin(), m.cells().end());
    EXPECT_NEAR(to_double(r.total), static_cast<double>(oracle::effort_sum(all, theta, months)), 1e-12);
    for (std::size_t p = 0; p < m.period_count(); ++p) {
      std::vector<std::uint32_t> col;
      for (std::size_t d = 0; d < m.developer_count(); ++d)
        col.push_back(m.at(d, p));
      EXPECT_NEAR(to_double(r.per_period[p].effort),
                  static_cast<double>(oracle::effort_sum(col, theta, months)), 1e-12);
    }
  }
}

TEST(Effort, MonotoneAndBounded) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(rng, 20, 4, 6);
    auto bound = upper_bound(m);
    EXPECT_EQ(project_effort(m, 1).total, bound);
    PersonMonths prev = bound;
    for (int theta = 1; theta <= 70; ++theta) {
      auto t = project_effort(m, theta).total;
      EXPECT_LE(t, prev);
      EXPECT_LE(t, bound);
      EXPECT_GE(t, PersonMonths(0));
      prev = t;
    }
  }
}

TEST(Effort, ParallelMatchesSerial) {
  omp_set_num_threads(4);
  std::mt19937_64 rng(53);
  auto m = random_matrix(rng, 400, 24, 6);
  for (int theta : {1, 7, 20, 100}) {
    auto a = project_effort(m, theta);
    auto b = project_effort_serial(m, theta);
    EXPECT_EQ(a.total, b.total);
    ASSERT_EQ(a.per_period.size(), b.per_period.size());
    for (std::size_t p = 0; p < a.per_period.size(); ++p) {
      EXPECT_EQ(a.per_period[p].effort, b.per_period[p].effort);
      EXPECT_EQ(a.per_period[p].active_developers, b.per_period[p].active_developers);
    }
  }
}

TEST(ErrorTable, SignedPercentages) {
  std::vector<std::uint32_t> cells = {12, 10, 13, 3, 11, 8, 10, 5};
  std::vector<DeveloperId> ids;
  for (int i = 0; i < 8; ++i)
    ids.push_back("d" + std::to_string(i));
  std::vector<std::uint32_t> column(cells);
  ActivityMatrix m(ids, {{"2013-01-01", 0, 1}}, ActivityMetric::Commits, 1, column, 0);
  std::vector<int> thetas = {10, 12};
  auto t = error_table(m, 10, thetas);
  ASSERT_TRUE(t.defined);
  EXPECT_EQ(t.base, PersonMonths(33, 5));
  EXPECT_FALSE(t.rows[0].percent);
  ASSERT_TRUE(t.rows[1].percent);
  EXPECT_EQ(format_signed(*t.rows[1].percent), "-10.35");
}

TEST(ErrorTable, UndefinedWhenBaseIsZero) {
  ActivityMatrix m({"a"}, {{"p", 0, 1}}, ActivityMetric::Commits, 6, {0}, 0);
  std::vector<int> thetas = {1, 2};
  auto t = error_table(m, 1, thetas);
  EXPECT_FALSE(t.defined);
  for (const auto& r : t.rows)
    EXPECT_FALSE(r.percent);
}

TEST(Format, RoundHalfToEven) {
  EXPECT_EQ(format_fixed(PersonMonths(33, 5)), "6.60");
  EXPECT_EQ(format_fixed(PersonMonths(1, 8)), "0.12");  // 0.125
  EXPECT_EQ(format_fixed(PersonMonths(3, 8)), "0.38");  // 0.375
  EXPECT_EQ(format_fixed(PersonMonths(-3, 8)), "-0.38");
  EXPECT_EQ(format_fixed(PersonMonths(1, 3)), "0.33");
  EXPECT_EQ(format_fixed(PersonMonths(2, 3)), "0.67");
  EXPECT_EQ(format_fixed(PersonMonths(5, 2), 0), "2");
  EXPECT_EQ(format_fixed(PersonMonths(7, 2), 0), "4");
  EXPECT_EQ(format_fixed(PersonMonths(-1, 1000)), "0.00");
  EXPECT_EQ(format_fixed(PersonMonths(123456789, 1)), "123456789.00");
  EXPECT_EQ(format_signed(PersonMonths(40, 33) * 100 / 6), "+20.20");
  EXPECT_EQ(format_signed(PersonMonths(1, 1000)), "0.00");
  EXPECT_EQ(format_signed(PersonMonths(-1, 2)), "-0.50");
}
