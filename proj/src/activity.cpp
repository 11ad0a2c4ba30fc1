#include "vcseffort/activity.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <tuple>

namespace vcseffort {

namespace {

namespace chr = std::chrono;

Date half_start(UnixSeconds t) {
  auto d = Date::of_instant(t);
  unsigned month = static_cast<unsigned>(d.ymd.month()) <= 6 ? 1 : 7;
  return Date::from_ymd(static_cast<int>(d.ymd.year()), month, 1);
}

std::string label_for_half(Date start) {
  char buf[8];
  int yy = static_cast<int>(start.ymd.year()) % 100;
  if (yy < 0)
    yy += 100;
  std::snprintf(buf, sizeof buf, "%02ds%d", yy, static_cast<unsigned>(start.ymd.month()) == 1 ? 1 : 2);
  return buf;
}

std::size_t locate(const std::vector<Period>& periods, UnixSeconds t) {
  auto it = std::upper_bound(periods.begin(), periods.end(), t,
                             [](UnixSeconds v, const Period& p) { return v < p.start; });
  if (it == periods.begin())
    return periods.size();
  --it;
  return t < it->end ? static_cast<std::size_t>(it - periods.begin()) : periods.size();
}

std::vector<Period> periods_for(std::span<const CommitRecord> commits, const PeriodSpec& spec) {
  spec.validate();
  UnixSeconds lo = 0, hi = 0;
  if (!commits.empty()) {
    auto [mn, mx] = std::minmax_element(
        commits.begin(), commits.end(),
        [](const CommitRecord& a, const CommitRecord& b) { return a.author_timestamp < b.author_timestamp; });
    lo = mn->author_timestamp;
    hi = mx->author_timestamp;
  } else if (!spec.range_start && !spec.anchor) {
    return {};
  }
  return build_periods(spec, lo, hi);
}

} // namespace

void PeriodSpec::validate() const {
  if (length_months < 1)
    throw ParameterError("period length must be at least one month");
  if (alignment == Alignment::CalendarHalfYear && length_months != 6)
    throw ParameterError("calendar half-year alignment requires 6-month periods");
  if (alignment == Alignment::Rolling && !anchor)
    throw ParameterError("rolling alignment requires an anchor date");
  if (range_start && range_end && !(*range_start < *range_end))
    throw ParameterError("period range start must precede its end");
}

std::string half_year_label(UnixSeconds t) { return label_for_half(half_start(t)); }

std::vector<Period> build_periods(const PeriodSpec& spec, UnixSeconds earliest, UnixSeconds latest) {
  spec.validate();
  UnixSeconds lo = spec.range_start ? spec.range_start->midnight() : earliest;
  std::vector<Period> out;

  if (spec.alignment == Alignment::CalendarHalfYear) {
    // range_end is exclusive; the last covered instant is one second before it.
    UnixSeconds hi = spec.range_end ? spec.range_end->midnight() - 1 : latest;
    if (hi < lo)
      return out;
    for (auto start = half_start(lo); start.midnight() <= hi; start = start.plus_months(6)) {
      auto end = start.plus_months(6);
      out.push_back({label_for_half(start), start.midnight(), end.midnight()});
    }
    return out;
  }

  // Rolling: the k-th period back is [anchor - k*n, anchor - (k-1)*n), computed
  // from the anchor each time so month-end clamping cannot drift.
  Date end = *spec.anchor;
  if (spec.range_end && *spec.range_end < end)
    end = *spec.range_end;
  if (lo >= end.midnight())
    lo = end.plus_months(-spec.length_months).midnight();
  for (int k = 1;; ++k) {
    auto start = spec.anchor->plus_months(-k * spec.length_months);
    auto stop = spec.anchor->plus_months(-(k - 1) * spec.length_months);
    if (stop.midnight() > end.midnight())
      continue;
    out.push_back({start.iso(), start.midnight(), stop.midnight()});
    if (start.midnight() <= lo)
      break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

ActivityMatrix::ActivityMatrix(std::vector<DeveloperId> developers, std::vector<Period> periods,
                               ActivityMetric metric, int length_months,
                               std::vector<std::uint32_t> cells, std::uint64_t overflow)
    : developers_(std::move(developers)), periods_(std::move(periods)), metric_(metric),
      length_months_(length_months), cells_(std::move(cells)), overflow_(overflow) {
  if (cells_.size() != developers_.size() * periods_.size())
    throw ParameterError("activity matrix cell count does not match its shape");
}

std::uint64_t ActivityMatrix::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

ActivityMatrix aggregate(std::span<const CommitRecord> commits, const IdentityResolution& ids,
                         const PeriodSpec& spec, ActivityMetric metric) {
  auto periods = periods_for(commits, spec);
  const std::size_t n_dev = ids.roster.size();
  const std::size_t n_per = periods.size();

  // Counting sort of commit indices by developer.
  std::vector<std::size_t> offset(n_dev + 1, 0);
  for (auto d : ids.commit_developer)
    ++offset[d + 1];
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<std::size_t> order(commits.size());
  {
    auto cursor = offset;
    for (std::size_t i = 0; i < commits.size(); ++i)
      order[cursor[ids.commit_developer[i]]++] = i;
  }

  std::vector<std::uint32_t> cells(n_dev * n_per, 0);
  std::uint64_t overflow = 0;
  const auto dev_count = static_cast<std::ptrdiff_t>(n_dev);

#pragma omp parallel for schedule(dynamic, 64) reduction(+ : overflow)
  for (std::ptrdiff_t d = 0; d < dev_count; ++d) {
    auto* row = cells.data() + static_cast<std::size_t>(d) * n_per;
    auto first = offset[static_cast<std::size_t>(d)];
    auto last = offset[static_cast<std::size_t>(d) + 1];
    if (metric == ActivityMetric::Commits) {
      for (auto k = first; k < last; ++k) {
        auto p = locate(periods, commits[order[k]].author_timestamp);
        if (p == n_per)
          ++overflow;
        else
          ++row[p];
      }
    } else {
      std::vector<std::int64_t> days;
      days.reserve(last - first);
      for (auto k = first; k < last; ++k)
        days.push_back(utc_day(commits[order[k]].author_timestamp));
      std::sort(days.begin(), days.end());
      days.erase(std::unique(days.begin(), days.end()), days.end());
      for (auto day : days) {
        auto p = locate(periods, day * 86400);
        if (p == n_per)
          ++overflow;
        else
          ++row[p];
      }
    }
  }

  std::vector<DeveloperId> devs;
  devs.reserve(n_dev);
  for (const auto& dev : ids.roster.developers())
    devs.push_back(dev.developer_id);
  return ActivityMatrix(std::move(devs), std::move(periods), metric, spec.length_months,
                        std::move(cells), overflow);
}

ActivityMatrix aggregate_serial(std::span<const CommitRecord> commits,
                                const IdentityResolution& ids, const PeriodSpec& spec,
                                ActivityMetric metric) {
  auto periods = periods_for(commits, spec);
  const std::size_t n_per = periods.size();
  std::vector<std::uint32_t> cells(ids.roster.size() * n_per, 0);
  std::uint64_t overflow = 0;
  std::set<std::pair<std::uint32_t, std::int64_t>> seen_days;

  for (std::size_t i = 0; i < commits.size(); ++i) {
    auto dev = ids.commit_developer[i];
    auto t = commits[i].author_timestamp;
    if (metric == ActivityMetric::ActiveDays) {
      auto day = utc_day(t);
      if (!seen_days.emplace(dev, day).second)
        continue;
      t = day * 86400;
    }
    std::size_t p = 0;
    while (p < n_per && !(periods[p].start <= t && t < periods[p].end))
      ++p;
    if (p == n_per)
      ++overflow;
    else
      ++cells[dev * n_per + p];
  }

  std::vector<DeveloperId> devs;
  for (const auto& dev : ids.roster.developers())
    devs.push_back(dev.developer_id);
  return ActivityMatrix(std::move(devs), std::move(periods), metric, spec.length_months,
                        std::move(cells), overflow);
}

std::vector<std::uint32_t> activity_in_window(std::span<const CommitRecord> commits,
                                              const IdentityResolution& ids, Date window_end,
                                              int length_months, ActivityMetric metric) {
  if (length_months < 1)
    throw ParameterError("window length must be at least one month");
  const auto end = window_end.midnight();
  const auto start = window_end.plus_months(-length_months).midnight();
  std::vector<std::uint32_t> counts(ids.roster.size(), 0);
  std::set<std::pair<std::uint32_t, std::int64_t>> seen_days;
  for (std::size_t i = 0; i < commits.size(); ++i) {
    auto t = commits[i].author_timestamp;
    if (t < start || t >= end)
      continue;
    auto dev = ids.commit_developer[i];
    if (metric == ActivityMetric::ActiveDays && !seen_days.emplace(dev, utc_day(t)).second)
      continue;
    ++counts[dev];
  }
  return counts;
}

void write_activity_csv(std::ostream& out, const ActivityMatrix& m) {
  out << "developer_id,period_label,count\n";
  for (std::size_t d = 0; d < m.developer_count(); ++d)
    for (std::size_t p = 0; p < m.period_count(); ++p)
      if (auto v = m.at(d, p); v != 0)
        out << m.developers()[d] << ',' << m.periods()[p].label << ',' << v << '\n';
}

} // namespace vcseffort
