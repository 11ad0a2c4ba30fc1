#pragma once

#include "vcseffort/calibration.hpp"
#include "vcseffort/effort.hpp"
#include "vcseffort/stats.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vcseffort {

std::string_view tool_version();

/// Configuration snapshot embedded in every report for audit.
struct RunInfo {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config; // in a stable order
};

/// Goodness rendered from the exact fraction, round half to even.
std::string format_goodness(const Confusion& c, int decimals = 2);

/// `theta,tp,fp,fn,tn,precision,recall,accuracy,f_measure,goodness,compensation`
/// preceded by `# key=value` provenance lines.
void write_sweep_csv(std::ostream& out, std::span<const ThresholdMetrics> sweep, const RunInfo* run = nullptr);

/// `theta range [9,11], selected 10, goodness 0.80`
std::string selection_summary(const ThetaSelection& sel, std::span<const ThresholdMetrics> sweep);
void write_selection_json(std::ostream& out, const ThetaSelection& sel,
                          std::span<const ThresholdMetrics> sweep, const RunInfo& run);

struct EffortDocument {
  RunInfo run;
  std::string theta_provenance; // "explicit" or "calibrated"
  std::optional<ThetaSelection> selection;
  EffortReport selected;
  std::vector<EffortReport> theta_table;   // optional rows for other thetas
  std::optional<ErrorTable> error_table;   // percentages vs the selected theta
};

void write_effort_json(std::ostream& out, const EffortDocument& doc);
/// `theta,period_label,person_months,error_pct`; a `total` row per theta.
void write_effort_csv(std::ostream& out, const EffortDocument& doc);
/// theta rows, period columns, total and error columns.
void write_effort_markdown(std::ostream& out, const EffortDocument& doc);

/// `cutoff,population,n,min,q1,median,mean,q3,max,D,p`, two rows per cutoff.
void write_representativeness_csv(std::ostream& out, std::span<const RepresentativenessRow> rows,
                                  const RunInfo* run = nullptr);

} // namespace vcseffort
