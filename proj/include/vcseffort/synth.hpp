#pragma once

#include "vcseffort/calibration.hpp"
#include "vcseffort/ingest.hpp"
#include "vcseffort/survey.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace vcseffort {

// Synthetic populations with planted ground truth. Test and benchmark
// scaffolding; nothing here models a real project.

struct PopulationSpec {
  std::uint32_t n_fulltime = 10;
  std::uint32_t n_other = 90;
  int theta_true = 20;        // every full-timer has activity >= theta_true, everyone else below
  double skew_exponent = 2.0; // P(k) proportional to k^-skew_exponent
  double label_noise = 0.0;   // probability that a survey label is flipped
  std::uint64_t seed = 42;

  /// Throws ParameterError for impossible specs (theta_true = 1 with n_other > 0, ...).
  void validate() const;
};

struct SyntheticDeveloper {
  DeveloperId id; // also the developer's email
  std::uint32_t activity = 0;
  bool full_time = false; // ground truth
  bool labeled_full_time = false;
};

struct Population {
  PopulationSpec spec;
  std::vector<SyntheticDeveloper> developers; // full-timers first

  std::vector<LabeledActivity> sample() const;
  std::vector<std::uint32_t> counts() const;
  /// Labels with roster index = position in `developers`.
  std::vector<SurveyLabel> labels(Date survey_date) const;
};

Population generate(const PopulationSpec& spec);

/// Inverse-CDF draw from P(k) proportional to k^-exponent on [lo, hi].
std::uint32_t draw_power_law(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi, double exponent);

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng);

struct SyntheticFixture {
  std::vector<CommitRecord> commits;
  std::vector<SurveyResponse> responses;
};

/// Commit log and survey for a population. The most recent window
/// [survey_date - window_months, survey_date) holds exactly each developer's
/// planted activity; `history_windows` earlier windows get fresh draws from
/// the same per-class distributions.
SyntheticFixture materialize(const Population& pop, Date survey_date, int window_months,
                             int history_windows = 0);

struct LogSpec {
  std::size_t commits = 500'000;
  std::size_t authors = 3'600;
  double bot_fraction = 0.0; // exactly round(commits * bot_fraction) commits by bot authors
  double merge_fraction = 0.0;
  Date first_day = Date::from_ymd(2010, 1, 1);
  int days = 4 * 365;
  std::uint64_t seed = 7;
};

/// Large, power-law-skewed commit log with planted bot commits.
std::vector<CommitRecord> synthetic_log(const LogSpec& spec);

} // namespace vcseffort
