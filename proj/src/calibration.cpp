#include "vcseffort/calibration.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <map>

namespace vcseffort {

namespace {

void require_sample(std::span<const LabeledActivity> sample) {
  if (sample.empty())
    throw CalibrationError("no-labels");
}

int resolve_theta_max(std::span<const LabeledActivity> sample, std::optional<int> theta_max) {
  int tmax = theta_max ? *theta_max : default_theta_max(sample);
  if (tmax < 1)
    throw ParameterError("theta_max must be at least 1");
  return tmax;
}

// Goodness as the fraction (den - |fp - fn|) / den, with 1/1 when den is 0.
std::pair<std::uint64_t, std::uint64_t> goodness_fraction(const Confusion& c) {
  auto den = c.tp + c.fn + c.fp;
  if (den == 0)
    return {1, 1};
  auto gap = c.fp > c.fn ? c.fp - c.fn : c.fn - c.fp;
  return {den - gap, den};
}

} // namespace

std::vector<LabeledActivity> labeled_activity(std::span<const CommitRecord> commits,
                                              const IdentityResolution& ids,
                                              std::span<const SurveyLabel> labels, int window_months,
                                              ActivityMetric metric) {
  std::map<Date, std::vector<std::uint32_t>> by_date;
  for (const auto& l : labels)
    if (!by_date.contains(l.survey_date))
      by_date.emplace(l.survey_date,
                      activity_in_window(commits, ids, l.survey_date, window_months, metric));
  std::vector<LabeledActivity> out;
  out.reserve(labels.size());
  for (const auto& l : labels)
    out.push_back({by_date.at(l.survey_date)[l.developer], l.label == Label::FullTime});
  return out;
}

std::vector<LabeledActivity> labeled_activity(std::span<const std::uint32_t> counts,
                                              std::span<const SurveyLabel> labels) {
  std::vector<LabeledActivity> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    if (l.developer >= counts.size())
      throw ParameterError("label refers to a developer outside the count table");
    out.push_back({counts[l.developer], l.label == Label::FullTime});
  }
  return out;
}

Confusion confusion_at(int theta, std::span<const LabeledActivity> sample) {
  if (theta < 1)
    throw ParameterError("theta must be at least 1");
  Confusion c;
  for (const auto& s : sample) {
    bool flagged = s.activity >= static_cast<std::uint32_t>(theta);
    if (s.full_time)
      ++(flagged ? c.tp : c.fn);
    else
      ++(flagged ? c.fp : c.tn);
  }
  return c;
}

ThresholdMetrics metrics_from(int theta, const Confusion& c) {
  ThresholdMetrics m;
  m.theta = theta;
  m.tp = c.tp;
  m.fp = c.fp;
  m.fn = c.fn;
  m.tn = c.tn;
  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.accuracy = ratio(c.tp + c.tn, c.tp + c.tn + c.fp + c.fn);
  m.f_measure = m.precision + m.recall == 0
                    ? 0.0
                    : 2 * m.precision * m.recall / (m.precision + m.recall);
  auto [num, den] = goodness_fraction(c);
  m.goodness = static_cast<double>(num) / static_cast<double>(den);
  m.compensation = static_cast<std::int64_t>(c.fn) - static_cast<std::int64_t>(c.fp);
  return m;
}

ThresholdMetrics metrics_at(int theta, std::span<const LabeledActivity> sample) {
  return metrics_from(theta, confusion_at(theta, sample));
}

int default_theta_max(std::span<const LabeledActivity> sample) {
  std::uint32_t top = 0;
  for (const auto& s : sample)
    top = std::max(top, s.activity);
  return static_cast<int>(top) + 1;
}

std::vector<ThresholdMetrics> sweep(std::span<const LabeledActivity> sample,
                                    std::optional<int> theta_max) {
  require_sample(sample);
  const int tmax = resolve_theta_max(sample, theta_max);
  const auto buckets = static_cast<std::size_t>(tmax) + 2;

  // ge_full[t] = full-timers with activity >= t, for t in 0..tmax+1.
  std::vector<std::uint64_t> ge_full(buckets, 0), ge_other(buckets, 0);
  std::uint64_t n_full = 0, n_other = 0;
  for (const auto& s : sample) {
    auto b = std::min<std::size_t>(s.activity, buckets - 1);
    ++(s.full_time ? ge_full[b] : ge_other[b]);
    ++(s.full_time ? n_full : n_other);
  }
  for (std::size_t t = buckets - 1; t-- > 0;) {
    ge_full[t] += ge_full[t + 1];
    ge_other[t] += ge_other[t + 1];
  }

  std::vector<ThresholdMetrics> out(static_cast<std::size_t>(tmax));
#pragma omp parallel for schedule(static)
  for (int theta = 1; theta <= tmax; ++theta) {
    auto t = static_cast<std::size_t>(theta);
    Confusion c{ge_full[t], ge_other[t], n_full - ge_full[t], n_other - ge_other[t]};
    out[t - 1] = metrics_from(theta, c);
  }
  return out;
}

std::vector<ThresholdMetrics> sweep_serial(std::span<const LabeledActivity> sample,
                                           std::optional<int> theta_max) {
  require_sample(sample);
  const int tmax = resolve_theta_max(sample, theta_max);
  std::vector<ThresholdMetrics> out;
  out.reserve(static_cast<std::size_t>(tmax));
  for (int theta = 1; theta <= tmax; ++theta)
    out.push_back(metrics_at(theta, sample));
  return out;
}

int compare_goodness(const Confusion& a, const Confusion& b) {
  auto [an, ad] = goodness_fraction(a);
  auto [bn, bd] = goodness_fraction(b);
  auto lhs = static_cast<unsigned __int128>(an) * bd;
  auto rhs = static_cast<unsigned __int128>(bn) * ad;
  return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

std::string ThetaSelection::describe_range() const {
  std::string out = contiguous ? "[" : "{";
  if (contiguous) {
    out += std::to_string(range_min()) + "," + std::to_string(range_max());
  } else {
    for (std::size_t i = 0; i < argmax.size(); ++i)
      out += (i ? "," : "") + std::to_string(argmax[i]);
  }
  out += contiguous ? "]" : "}";
  return out;
}

ThetaSelection select_theta(std::span<const ThresholdMetrics> sweep_result, SelectionPolicy policy) {
  if (sweep_result.empty())
    throw CalibrationError("cannot select theta from an empty sweep");
  const ThresholdMetrics* best = &sweep_result.front();
  for (const auto& m : sweep_result)
    if (compare_goodness(m.confusion(), best->confusion()) > 0)
      best = &m;

  ThetaSelection sel;
  sel.policy = policy;
  sel.max_goodness = best->goodness;
  for (const auto& m : sweep_result)
    if (compare_goodness(m.confusion(), best->confusion()) == 0)
      sel.argmax.push_back(m.theta);
  std::sort(sel.argmax.begin(), sel.argmax.end());
  sel.contiguous = sel.argmax.back() - sel.argmax.front() + 1 ==
                   static_cast<int>(sel.argmax.size());
  switch (policy) {
  case SelectionPolicy::Min: sel.selected_theta = sel.argmax.front(); break;
  case SelectionPolicy::Max: sel.selected_theta = sel.argmax.back(); break;
  case SelectionPolicy::LowerMedian:
    sel.selected_theta = sel.argmax[(sel.argmax.size() - 1) / 2];
    break;
  }
  return sel;
}

std::string_view to_string(SelectionPolicy p) {
  switch (p) {
  case SelectionPolicy::Min: return "min";
  case SelectionPolicy::Max: return "max";
  case SelectionPolicy::LowerMedian: return "lower-median";
  }
  return "?";
}

std::optional<SelectionPolicy> parse_selection_policy(std::string_view s) {
  if (s == "min") return SelectionPolicy::Min;
  if (s == "max") return SelectionPolicy::Max;
  if (s == "lower-median") return SelectionPolicy::LowerMedian;
  return std::nullopt;
}

} // namespace vcseffort
