#include "vcseffort/synth.hpp"

#include "vcseffort/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace vcseffort {

namespace {

std::string dev_email(std::size_t i) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "dev%05zu@synth.example", i);
  return buf;
}

std::string dev_name(std::size_t i) { return "Developer " + std::to_string(i); }

std::string hex_hash(std::uint64_t a, std::uint64_t b) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a),
                static_cast<unsigned long long>(b));
  return buf;
}

std::uint32_t draw_full(std::mt19937_64& rng, const PopulationSpec& s) {
  auto theta = static_cast<std::uint32_t>(s.theta_true);
  return theta - 1 + draw_power_law(rng, 1, 3 * theta, s.skew_exponent);
}

std::uint32_t draw_other(std::mt19937_64& rng, const PopulationSpec& s) {
  return draw_power_law(rng, 1, static_cast<std::uint32_t>(s.theta_true) - 1, s.skew_exponent);
}

} // namespace

void PopulationSpec::validate() const {
  if (theta_true < 1)
    throw ParameterError("planted theta must be at least 1");
  if (theta_true == 1 && n_other > 0)
    throw ParameterError("planted theta 1 leaves no room for non-full-time activity");
  if (!(label_noise >= 0 && label_noise <= 1))
    throw ParameterError("label noise must lie in [0, 1]");
  if (!(skew_exponent > 0))
    throw ParameterError("power-law exponent must be positive");
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint32_t draw_power_law(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi, double exponent) {
  if (lo < 1 || hi < lo)
    throw ParameterError("power-law support must be a non-empty range of positive integers");
  double total = 0;
  for (auto k = lo; k <= hi; ++k)
    total += std::pow(static_cast<double>(k), -exponent);
  double u = unit_uniform(rng) * total;
  double acc = 0;
  for (auto k = lo; k < hi; ++k) {
    acc += std::pow(static_cast<double>(k), -exponent);
    if (u < acc)
      return k;
  }
  return hi;
}

std::vector<LabeledActivity> Population::sample() const {
  std::vector<LabeledActivity> out;
  out.reserve(developers.size());
  for (const auto& d : developers)
    out.push_back({d.activity, d.labeled_full_time});
  return out;
}

std::vector<std::uint32_t> Population::counts() const {
  std::vector<std::uint32_t> out;
  out.reserve(developers.size());
  for (const auto& d : developers)
    out.push_back(d.activity);
  return out;
}

std::vector<SurveyLabel> Population::labels(Date survey_date) const {
  std::vector<SurveyLabel> out;
  for (std::uint32_t i = 0; i < developers.size(); ++i)
    out.push_back({developers[i].id, i,
                   developers[i].labeled_full_time ? Label::FullTime : Label::NonFullTime,
                   Provenance::Self, true, survey_date});
  return out;
}

Population generate(const PopulationSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  Population pop;
  pop.spec = spec;
  const std::size_t total = std::size_t{spec.n_fulltime} + spec.n_other;
  pop.developers.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    bool full = i < spec.n_fulltime;
    SyntheticDeveloper d;
    d.id = dev_email(i);
    d.full_time = full;
    d.activity = full ? draw_full(rng, spec) : draw_other(rng, spec);
    bool flip = unit_uniform(rng) < spec.label_noise;
    d.labeled_full_time = full != flip;
    pop.developers.push_back(std::move(d));
  }
  return pop;
}

SyntheticFixture materialize(const Population& pop, Date survey_date, int window_months,
                             int history_windows) {
  if (window_months < 1 || history_windows < 0)
    throw ParameterError("window length and history must be positive");
  std::mt19937_64 rng(pop.spec.seed ^ 0x9E3779B97F4A7C15ULL);
  SyntheticFixture fx;
  std::uint64_t serial = 0;

  for (int w = 0; w <= history_windows; ++w) {
    auto end = survey_date.plus_months(-w * window_months).midnight();
    auto start = survey_date.plus_months(-(w + 1) * window_months).midnight();
    auto span = static_cast<std::uint64_t>(end - start);
    for (std::size_t i = 0; i < pop.developers.size(); ++i) {
      const auto& d = pop.developers[i];
      std::uint32_t activity = w == 0 ? d.activity
                               : d.full_time ? draw_full(rng, pop.spec)
                                             : draw_other(rng, pop.spec);
      for (std::uint32_t c = 0; c < activity; ++c) {
        auto ts = start + static_cast<UnixSeconds>(rng() % span);
        fx.commits.push_back({hex_hash(pop.spec.seed, ++serial), dev_name(i), d.id, ts, false});
      }
    }
  }
  std::stable_sort(fx.commits.begin(), fx.commits.end(),
                   [](const CommitRecord& a, const CommitRecord& b) {
                     return a.author_timestamp < b.author_timestamp;
                   });

  static constexpr HoursBucket kFullHours[] = {HoursBucket::Over40, HoursBucket::H40};
  static constexpr HoursBucket kOtherHours[] = {HoursBucket::H30, HoursBucket::H20,
                                                HoursBucket::H10, HoursBucket::Under5};
  for (const auto& d : pop.developers) {
    SurveyResponse r;
    r.respondent_email = d.id;
    r.survey_date = survey_date;
    if (d.labeled_full_time) {
      r.self_class = SelfClass::FullTime;
      r.hours = kFullHours[rng() % 2];
    } else {
      r.self_class = rng() % 3 == 0 ? SelfClass::Occasional : SelfClass::PartTime;
      r.hours = kOtherHours[rng() % 4];
    }
    fx.responses.push_back(std::move(r));
  }
  return fx;
}

std::vector<CommitRecord> synthetic_log(const LogSpec& spec) {
  if (spec.authors == 0 || spec.days < 1)
    throw ParameterError("synthetic log needs at least one author and one day");
  std::mt19937_64 rng(spec.seed);

  // Author weights follow a Zipf-like power law; sample by binary search on the CDF.
  std::vector<double> cdf(spec.authors);
  double acc = 0;
  for (std::size_t a = 0; a < spec.authors; ++a)
    cdf[a] = acc += 1.0 / static_cast<double>(a + 1);

  const auto bots = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.commits) * spec.bot_fraction));
  static const char* kBots[][2] = {{"OpenStack Jenkins", "jenkins@review.example.org"},
                                   {"Release bot", "release-bot@example.org"},
                                   {"Gerrit Code Review", "review@gerrit.example.org"}};

  std::vector<CommitRecord> out;
  out.reserve(spec.commits);
  const auto t0 = spec.first_day.midnight();
  const auto span = static_cast<std::uint64_t>(spec.days) * 86400;
  for (std::size_t i = 0; i < spec.commits; ++i) {
    CommitRecord c;
    c.hash = hex_hash(spec.seed, i);
    c.author_timestamp = t0 + static_cast<UnixSeconds>(rng() % span);
    c.is_merge = unit_uniform(rng) < spec.merge_fraction;
    if (i < bots) {
      const auto* bot = kBots[i % 3];
      c.author_name = bot[0];
      c.author_email = bot[1];
    } else {
      auto a = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), unit_uniform(rng) * acc) - cdf.begin());
      a = std::min(a, spec.authors - 1);
      c.author_name = dev_name(a);
      c.author_email = dev_email(a);
    }
    out.push_back(std::move(c));
  }
  // Interleave bot and human commits deterministically.
  for (std::size_t i = out.size(); i > 1; --i)
    std::swap(out[i - 1], out[rng() % i]);
  return out;
}

} // namespace vcseffort
