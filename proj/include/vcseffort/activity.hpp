#pragma once

#include "vcseffort/civil_time.hpp"
#include "vcseffort/identity.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace vcseffort {

enum class Alignment {
  CalendarHalfYear, // Jan-Jun / Jul-Dec, labels like `13s2`
  Rolling,          // consecutive windows ending at an anchor date, ISO start labels
};

enum class ActivityMetric { Commits, ActiveDays };

struct PeriodSpec {
  int length_months = 6;
  Alignment alignment = Alignment::CalendarHalfYear;
  std::optional<Date> anchor; // required for Rolling: end (exclusive) of the last period

  // Optional bounds on the periods generated. Bounds snap outward to whole
  // periods; commits outside every generated period go to the overflow bucket.
  std::optional<Date> range_start;
  std::optional<Date> range_end;

  /// Throws ParameterError when the spec is inconsistent.
  void validate() const;
};

/// Half-open interval [start, end) in UTC seconds.
struct Period {
  std::string label;
  UnixSeconds start = 0;
  UnixSeconds end = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

/// Periods covering [earliest, latest] (or the spec's range), oldest first.
std::vector<Period> build_periods(const PeriodSpec& spec, UnixSeconds earliest, UnixSeconds latest);

/// Label of the calendar half containing `t`, e.g. `13s1`.
std::string half_year_label(UnixSeconds t);

/// Developer x period activity counts. Rows follow roster order, so a
/// developer with no counted activity still has an (all-zero) row.
class ActivityMatrix {
public:
  ActivityMatrix() = default;
  ActivityMatrix(std::vector<DeveloperId> developers, std::vector<Period> periods,
                 ActivityMetric metric, int length_months, std::vector<std::uint32_t> cells,
                 std::uint64_t overflow);

  std::size_t developer_count() const { return developers_.size(); }
  std::size_t period_count() const { return periods_.size(); }
  const std::vector<DeveloperId>& developers() const { return developers_; }
  const std::vector<Period>& periods() const { return periods_; }
  ActivityMetric metric() const { return metric_; }
  int length_months() const { return length_months_; }

  std::uint32_t at(std::size_t developer, std::size_t period) const {
    return cells_[developer * periods_.size() + period];
  }
  std::span<const std::uint32_t> row(std::size_t developer) const {
    return {cells_.data() + developer * periods_.size(), periods_.size()};
  }
  std::span<const std::uint32_t> cells() const { return cells_; }

  /// Commits (or active days) that fell outside every period.
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total() const;

  friend bool operator==(const ActivityMatrix&, const ActivityMatrix&) = default;

private:
  std::vector<DeveloperId> developers_;
  std::vector<Period> periods_;
  ActivityMetric metric_ = ActivityMetric::Commits;
  int length_months_ = 6;
  std::vector<std::uint32_t> cells_;
  std::uint64_t overflow_ = 0;
};

/// OpenMP kernel, partitioned by developer.
ActivityMatrix aggregate(std::span<const CommitRecord> commits, const IdentityResolution& ids,
                         const PeriodSpec& spec, ActivityMetric metric = ActivityMetric::Commits);

/// Sequential reference: one pass over commits, linear period search.
ActivityMatrix aggregate_serial(std::span<const CommitRecord> commits,
                                const IdentityResolution& ids, const PeriodSpec& spec,
                                ActivityMetric metric = ActivityMetric::Commits);

/// Per-roster-developer activity in [window_end - length_months, window_end).
std::vector<std::uint32_t> activity_in_window(std::span<const CommitRecord> commits,
                                              const IdentityResolution& ids, Date window_end,
                                              int length_months,
                                              ActivityMetric metric = ActivityMetric::Commits);

/// `developer_id,period_label,count`, non-zero cells only, row-major.
void write_activity_csv(std::ostream& out, const ActivityMatrix& m);

} // namespace vcseffort
