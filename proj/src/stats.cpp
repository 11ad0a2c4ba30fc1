#include "vcseffort/stats.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vcseffort {

double ks_p_value(double d, std::size_t n1, std::size_t n2) {
  if (d <= 0)
    return 1.0;
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) /
                    static_cast<double>(n1 + n2);
  const double root = std::sqrt(ne);
  const double lambda = (root + 0.12 + 0.11 / root) * d;

  // Below ~1.18 the alternating tail series converges slowly and its
  // rounding noise breaks monotonicity near p = 1; the equivalent series
  // for the CDF converges fast there.
  if (lambda < 1.18) {
    constexpr double kPi = 3.14159265358979323846;
    const double w = kPi * kPi / (8.0 * lambda * lambda);
    double cdf = 0;
    for (int k = 1; k <= 50; ++k) {
      double odd = 2.0 * k - 1.0;
      double term = std::exp(-odd * odd * w);
      cdf += term;
      if (term < 1e-17 * cdf)
        break;
    }
    cdf *= std::sqrt(2.0 * kPi) / lambda;
    return std::clamp(1.0 - cdf, std::numeric_limits<double>::min(), 1.0);
  }

  const double a = -2.0 * lambda * lambda;
  double sum = 0;
  double sign = 1;
  bool converged = false;
  for (int k = 1; k <= 1'000'000; ++k) {
    double term = 2.0 * std::exp(a * k * k);
    sum += sign * term;
    if (term < 1e-12) {
      converged = true;
      break;
    }
    sign = -sign;
  }
  if (!converged)
    return 1.0;
  return std::clamp(sum, std::numeric_limits<double>::min(), 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw ParameterError("Kolmogorov-Smirnov test needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());

  // Track |i*n2 - j*n1| in integers, divide once at the end.
  const auto n1 = static_cast<std::int64_t>(x.size());
  const auto n2 = static_cast<std::int64_t>(y.size());
  std::int64_t best = 0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    double v = j == y.size() || (i < x.size() && x[i] <= y[j]) ? x[i] : y[j];
    while (i < x.size() && x[i] <= v)
      ++i;
    while (j < y.size() && y[j] <= v)
      ++j;
    best = std::max(best, std::abs(static_cast<std::int64_t>(i) * n2 - static_cast<std::int64_t>(j) * n1));
  }

  KsResult r;
  r.n1 = x.size();
  r.n2 = y.size();
  r.d_statistic = static_cast<double>(best) / static_cast<double>(n1 * n2);
  r.p_value = ks_p_value(r.d_statistic, r.n1, r.n2);
  return r;
}

FiveNumberSummary summarize(std::span<const double> sample) {
  FiveNumberSummary s;
  s.n = sample.size();
  if (sample.empty())
    return s;
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    double h = static_cast<double>(v.size() - 1) * p;
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

std::vector<RepresentativenessRow> representativeness_table(const ActivityByDeveloper& all,
                                                            const ActivityByDeveloper& surveyed,
                                                            std::span<const std::uint32_t> cutoffs) {
  for (const auto& [id, count] : surveyed)
    if (!all.contains(id))
      throw ParameterError("surveyed developer " + id + " is not in the full population");

  auto filtered = [](const ActivityByDeveloper& pop, std::uint32_t cutoff) {
    std::vector<double> out;
    for (const auto& [id, count] : pop)
      if (count >= cutoff)
        out.push_back(count);
    return out;
  };

  std::vector<RepresentativenessRow> rows;
  for (auto cutoff : cutoffs) {
    RepresentativenessRow row;
    row.cutoff = cutoff;
    auto a = filtered(all, cutoff);
    auto s = filtered(surveyed, cutoff);
    row.all = summarize(a);
    row.surveyed = summarize(s);
    if (!a.empty() && !s.empty()) {
      row.ks = ks_two_sample(a, s);
      row.ks->cutoff = cutoff;
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace vcseffort
