#pragma once

#include "vcseffort/activity.hpp"
#include "vcseffort/survey.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vcseffort {

/// A labeled developer's activity in their survey window.
struct LabeledActivity {
  std::uint32_t activity = 0;
  bool full_time = false;
};

struct Confusion {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct ThresholdMetrics {
  int theta = 1;
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 1, recall = 1, accuracy = 1, f_measure = 0, goodness = 1;
  std::int64_t compensation = 0; // fn - fp

  Confusion confusion() const { return {tp, fp, fn, tn}; }
  friend bool operator==(const ThresholdMetrics&, const ThresholdMetrics&) = default;
};

/// Pairs each label with the activity of its developer in the window of
/// `window_months` ending at that respondent's survey date. Developers with
/// no commits in the window get activity 0.
std::vector<LabeledActivity> labeled_activity(std::span<const CommitRecord> commits,
                                              const IdentityResolution& ids,
                                              std::span<const SurveyLabel> labels, int window_months,
                                              ActivityMetric metric = ActivityMetric::Commits);

/// Same join from precomputed per-roster-developer counts.
std::vector<LabeledActivity> labeled_activity(std::span<const std::uint32_t> counts,
                                              std::span<const SurveyLabel> labels);

/// A developer is classified full-time iff activity >= theta.
Confusion confusion_at(int theta, std::span<const LabeledActivity> sample);

/// Degenerate denominators: precision and recall are 1 when undefined,
/// F is 0 when precision + recall is 0, goodness is 1 when tp+fn+fp is 0.
ThresholdMetrics metrics_from(int theta, const Confusion& c);
ThresholdMetrics metrics_at(int theta, std::span<const LabeledActivity> sample);

/// max activity + 1, so the all-negative end of the sweep is always present.
int default_theta_max(std::span<const LabeledActivity> sample);

/// Metrics for theta = 1..theta_max from cumulative activity histograms,
/// per-theta work spread over OpenMP threads.
/// Throws CalibrationError("no-labels") on an empty sample.
std::vector<ThresholdMetrics> sweep(std::span<const LabeledActivity> sample,
                                    std::optional<int> theta_max = std::nullopt);

/// Reference: independent recount of the sample for every theta.
std::vector<ThresholdMetrics> sweep_serial(std::span<const LabeledActivity> sample,
                                           std::optional<int> theta_max = std::nullopt);

/// Exact goodness ordering on confusion counts (no floating point).
/// Returns <0, 0, >0 as goodness(a) is less than, equal to, greater than goodness(b).
int compare_goodness(const Confusion& a, const Confusion& b);

enum class SelectionPolicy { Min, Max, LowerMedian };

struct ThetaSelection {
  std::vector<int> argmax; // every theta attaining the maximum, ascending
  bool contiguous = true;
  int selected_theta = 0;
  double max_goodness = 0;
  SelectionPolicy policy = SelectionPolicy::LowerMedian;

  int range_min() const { return argmax.front(); }
  int range_max() const { return argmax.back(); }
  /// `[9,11]` when contiguous, `{3,5,7}` otherwise.
  std::string describe_range() const;
};

/// Throws CalibrationError on an empty sweep.
ThetaSelection select_theta(std::span<const ThresholdMetrics> sweep_result,
                            SelectionPolicy policy = SelectionPolicy::LowerMedian);

std::string_view to_string(SelectionPolicy p);
std::optional<SelectionPolicy> parse_selection_policy(std::string_view s);

} // namespace vcseffort
