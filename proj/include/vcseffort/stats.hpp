#pragma once

#include "vcseffort/identity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace vcseffort {

struct KsResult {
  double d_statistic = 0;
  double p_value = 1;
  std::size_t n1 = 0, n2 = 0;
  std::uint32_t cutoff = 0;
};

/// Two-sample Kolmogorov-Smirnov test. D is the largest gap between the
/// right-continuous ECDFs over the pooled distinct values; p comes from the
/// asymptotic Kolmogorov distribution with effective size n1*n2/(n1+n2).
/// Throws ParameterError on an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic p-value for a given D and sample sizes, clamped to (0, 1].
double ks_p_value(double d, std::size_t n1, std::size_t n2);

/// min, quartiles, median, mean, max. Quartiles interpolate linearly
/// between order statistics at (n-1)p.
struct FiveNumberSummary {
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};
FiveNumberSummary summarize(std::span<const double> sample);

struct RepresentativenessRow {
  std::uint32_t cutoff = 0;
  FiveNumberSummary all;
  FiveNumberSummary surveyed;
  std::optional<KsResult> ks; // empty when a filtered population is empty
  bool insufficient_data() const { return !ks.has_value(); }
};

using ActivityByDeveloper = std::map<DeveloperId, std::uint32_t>;

/// For every cutoff c, both populations are restricted to activity >= c and
/// compared. Throws ParameterError if a surveyed developer is missing from `all`.
std::vector<RepresentativenessRow> representativeness_table(const ActivityByDeveloper& all,
                                                            const ActivityByDeveloper& surveyed,
                                                            std::span<const std::uint32_t> cutoffs);

} // namespace vcseffort
