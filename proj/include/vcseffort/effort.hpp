#pragma once

#include "vcseffort/activity.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vcseffort {

/// Exact effort in person-months.
using PersonMonths = boost::rational<std::int64_t>;

/// months if activity >= theta (saturation), months * activity / theta otherwise.
PersonMonths developer_effort(std::uint64_t activity, int theta, int months);

struct PeriodEffort {
  std::string label;
  PersonMonths effort;
  std::uint32_t active_developers = 0;
};

struct ErrorRow {
  int theta = 1;
  PersonMonths effort;
  std::optional<PersonMonths> percent; // empty for the selected theta itself
};

/// Signed percentage error of E(theta') relative to E(theta_selected).
struct ErrorTable {
  int theta_selected = 1;
  PersonMonths base;
  bool defined = true; // false when E(theta_selected) is 0
  std::vector<ErrorRow> rows;
};

struct EffortReport {
  int theta = 1;
  int months = 6;
  std::vector<PeriodEffort> per_period;
  PersonMonths total;
  PersonMonths upper_bound; // effort at theta = 1
  std::optional<ErrorTable> error_vs;
};

/// Per-period effort is computed in parallel over periods. Throws
/// ParameterError when theta < 1.
EffortReport project_effort(const ActivityMatrix& m, int theta);

/// Reference: sequential sum of developer_effort over every cell.
EffortReport project_effort_serial(const ActivityMatrix& m, int theta);

/// months x number of active (developer, period) cells.
PersonMonths upper_bound(const ActivityMatrix& m);

ErrorTable error_table(const ActivityMatrix& m, int theta_selected, std::span<const int> thetas);

/// One report per theta, as rows of a theta-by-period table.
std::vector<EffortReport> effort_by_theta(const ActivityMatrix& m, std::span<const int> thetas);

/// Decimal rendering, round half to even. `format_fixed(PersonMonths{33, 5})` is "6.60".
std::string format_fixed(const PersonMonths& value, int decimals = 2);
/// As format_fixed, with an explicit '+' on positive values.
std::string format_signed(const PersonMonths& value, int decimals = 2);

double to_double(const PersonMonths& value);

} // namespace vcseffort
