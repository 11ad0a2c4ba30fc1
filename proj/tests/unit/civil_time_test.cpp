#include "oracles.hpp"

#include "vcseffort/civil_time.hpp"
#include "vcseffort/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vcseffort;

TEST(CivilTime, MidnightMatchesIndependentDayCount) {
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    int y = std::uniform_int_distribution<int>(1960, 2080)(rng);
    unsigned m = std::uniform_int_distribution<unsigned>(1, 12)(rng);
    unsigned d = std::uniform_int_distribution<unsigned>(1, 28)(rng);
    EXPECT_EQ(Date::from_ymd(y, m, d).midnight(), oracle::midnight(y, m, d));
  }
}

TEST(CivilTime, OfInstantFloorsNegativeTimes) {
  EXPECT_EQ(Date::of_instant(-1), Date::from_ymd(1969, 12, 31));
  EXPECT_EQ(Date::of_instant(0), Date::from_ymd(1970, 1, 1));
  EXPECT_EQ(Date::of_instant(86399), Date::from_ymd(1970, 1, 1));
  EXPECT_EQ(utc_day(-86400), -1);
  EXPECT_EQ(utc_day(-86401), -2);
}

TEST(CivilTime, PlusMonthsClampsToMonthEnd) {
  EXPECT_EQ(Date::from_ymd(2013, 3, 31).plus_months(-1), Date::from_ymd(2013, 2, 28));
  EXPECT_EQ(Date::from_ymd(2012, 3, 31).plus_months(-1), Date::from_ymd(2012, 2, 29));
  EXPECT_EQ(Date::from_ymd(2013, 8, 31).plus_months(-6), Date::from_ymd(2013, 2, 28));
  EXPECT_EQ(Date::from_ymd(2013, 11, 15).plus_months(3), Date::from_ymd(2014, 2, 15));
  EXPECT_EQ(Date::from_ymd(2013, 1, 1).plus_months(-12), Date::from_ymd(2012, 1, 1));
}

TEST(CivilTime, IsoRoundTrip) {
  Date d = parse_iso_date("2013-02-01");
  EXPECT_EQ(d, Date::from_ymd(2013, 2, 1));
  EXPECT_EQ(d.iso(), "2013-02-01");
}

TEST(CivilTime, RejectsBadDates) {
  EXPECT_THROW(parse_iso_date("2013-02-30"), ParameterError);
  EXPECT_THROW(parse_iso_date("2013-2-01"), ParameterError);
  EXPECT_THROW(parse_iso_date("20130201"), ParameterError);
  EXPECT_THROW(parse_iso_date("2013-0x-01"), ParameterError);
  EXPECT_THROW(Date::from_ymd(2013, 13, 1), ParameterError);
}
