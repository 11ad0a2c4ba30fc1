#include "vcseffort/civil_time.hpp"

#include "vcseffort/error.hpp"

#include <charconv>
#include <cstdio>

namespace vcseffort {

namespace chr = std::chrono;

Date Date::from_ymd(int y, unsigned m, unsigned d) {
  Date out{chr::year{y} / chr::month{m} / chr::day{d}};
  if (!out.ymd.ok())
    throw ParameterError("invalid calendar date " + std::to_string(y) + "-" +
                         std::to_string(m) + "-" + std::to_string(d));
  return out;
}

Date Date::of_instant(UnixSeconds t) {
  return Date{chr::year_month_day{chr::sys_days{chr::days{utc_day(t)}}}};
}

UnixSeconds Date::midnight() const { return day_number() * 86400; }

std::int64_t Date::day_number() const {
  return chr::sys_days{ymd}.time_since_epoch().count();
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Date Date::plus_months(int months) const {
  auto shifted = chr::year_month{ymd.year(), ymd.month()} + chr::months{months};
  auto last = chr::year_month_day_last{shifted.year(), chr::month_day_last{shifted.month()}};
  auto day = ymd.day() > last.day() ? last.day() : ymd.day();
  return Date{shifted.year() / shifted.month() / day};
}

Date parse_iso_date(std::string_view text) {
  auto fail = [&]() -> Date {
    throw ParameterError("expected ISO date YYYY-MM-DD, got '" + std::string(text) + "'");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    return fail();
  int y = 0;
  unsigned m = 0, d = 0;
  auto parse = [&](std::string_view part, auto& value) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    return ec == std::errc{} && ptr == part.data() + part.size();
  };
  if (!parse(text.substr(0, 4), y) || !parse(text.substr(5, 2), m) ||
      !parse(text.substr(8, 2), d))
    return fail();
  Date out{chr::year{y} / chr::month{m} / chr::day{d}};
  if (!out.ymd.ok())
    return fail();
  return out;
}

std::int64_t utc_day(UnixSeconds t) {
  auto q = t / 86400;
  if (t % 86400 < 0)
    --q;
  return q;
}

} // namespace vcseffort
