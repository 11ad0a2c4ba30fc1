#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace vcseffort {

// All instants are UTC seconds since the Unix epoch.
using UnixSeconds = std::int64_t;

/// A calendar date in UTC (proleptic Gregorian).
struct Date {
  std::chrono::year_month_day ymd;

  static Date from_ymd(int y, unsigned m, unsigned d);
  static Date of_instant(UnixSeconds t);

  /// Midnight UTC at the start of this date.
  UnixSeconds midnight() const;
  /// Days since 1970-01-01.
  std::int64_t day_number() const;
  std::string iso() const;

  /// Shift by whole calendar months; days past the end of the target
  /// month clamp to its last day (2013-03-31 minus 1 month = 2013-02-28).
  Date plus_months(int months) const;

  friend bool operator==(const Date&, const Date&) = default;
  friend auto operator<=>(const Date& a, const Date& b) { return a.ymd <=> b.ymd; }
};

/// Parse `YYYY-MM-DD`. Throws ParameterError on malformed or invalid dates.
Date parse_iso_date(std::string_view text);

/// Day number (days since epoch) of an instant, floor semantics for negatives.
std::int64_t utc_day(UnixSeconds t);

} // namespace vcseffort
