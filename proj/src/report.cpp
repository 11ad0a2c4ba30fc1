#include "vcseffort/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>

#ifndef VCSEFFORT_VERSION
#define VCSEFFORT_VERSION "0.0.0"
#endif

namespace vcseffort {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string exact(const PersonMonths& v) {
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

void write_run_comments(std::ostream& out, const RunInfo& run) {
  out << "# tool=vcseffort " << tool_version() << '\n';
  out << "# command=" << run.command << '\n';
  for (const auto& [k, v] : run.config)
    out << "# " << k << '=' << v << '\n';
}

nlohmann::ordered_json run_json(const RunInfo& run) {
  nlohmann::ordered_json j;
  j["tool"] = "vcseffort";
  j["version"] = tool_version();
  j["command"] = run.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : run.config)
    cfg[k] = v;
  j["config"] = cfg;
  return j;
}

std::string error_cell(const std::optional<ErrorTable>& table, int theta) {
  if (!table)
    return "";
  if (!table->defined)
    return "undefined";
  for (const auto& row : table->rows)
    if (row.theta == theta)
      return row.percent ? format_signed(*row.percent) : "--";
  return "";
}

std::vector<const EffortReport*> table_rows(const EffortDocument& doc) {
  std::vector<const EffortReport*> rows;
  std::set<int> seen;
  for (const auto& r : doc.theta_table)
    if (seen.insert(r.theta).second)
      rows.push_back(&r);
  if (!seen.contains(doc.selected.theta)) {
    rows.push_back(&doc.selected);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const EffortReport* a, const EffortReport* b) { return a->theta < b->theta; });
  }
  return rows;
}

} // namespace

std::string_view tool_version() { return VCSEFFORT_VERSION; }

std::string format_goodness(const Confusion& c, int decimals) {
  auto den = c.tp + c.fn + c.fp;
  if (den == 0)
    return format_fixed(PersonMonths(1), decimals);
  auto gap = c.fp > c.fn ? c.fp - c.fn : c.fn - c.fp;
  return format_fixed(PersonMonths(static_cast<std::int64_t>(den - gap), static_cast<std::int64_t>(den)),
                      decimals);
}

void write_sweep_csv(std::ostream& out, std::span<const ThresholdMetrics> sweep, const RunInfo* run) {
  if (run)
    write_run_comments(out, *run);
  out << "theta,tp,fp,fn,tn,precision,recall,accuracy,f_measure,goodness,compensation\n";
  for (const auto& m : sweep)
    out << m.theta << ',' << m.tp << ',' << m.fp << ',' << m.fn << ',' << m.tn << ','
        << fmt("%.6f", m.precision) << ',' << fmt("%.6f", m.recall) << ','
        << fmt("%.6f", m.accuracy) << ',' << fmt("%.6f", m.f_measure) << ','
        << fmt("%.6f", m.goodness) << ',' << m.compensation << '\n';
}

std::string selection_summary(const ThetaSelection& sel, std::span<const ThresholdMetrics> sweep) {
  std::string good = fmt("%.2f", sel.max_goodness);
  for (const auto& m : sweep)
    if (m.theta == sel.selected_theta)
      good = format_goodness(m.confusion());
  return std::string(sel.contiguous ? "theta range " : "theta set ") + sel.describe_range() +
         ", selected " + std::to_string(sel.selected_theta) + ", goodness " + good;
}

void write_selection_json(std::ostream& out, const ThetaSelection& sel,
                          std::span<const ThresholdMetrics> sweep, const RunInfo& run) {
  nlohmann::ordered_json j;
  j["run"] = run_json(run);
  j["argmax"] = sel.argmax;
  j["contiguous"] = sel.contiguous;
  j["range"] = sel.describe_range();
  j["policy"] = to_string(sel.policy);
  j["selected_theta"] = sel.selected_theta;
  j["max_goodness"] = sel.max_goodness;
  j["summary"] = selection_summary(sel, sweep);
  out << j.dump(2) << '\n';
}

void write_effort_json(std::ostream& out, const EffortDocument& doc) {
  auto report_json = [](const EffortReport& r) {
    nlohmann::ordered_json j;
    j["theta"] = r.theta;
    j["period_months"] = r.months;
    auto periods = nlohmann::ordered_json::array();
    for (const auto& p : r.per_period)
      periods.push_back({{"label", p.label},
                         {"person_months", format_fixed(p.effort)},
                         {"exact", exact(p.effort)},
                         {"active_developers", p.active_developers}});
    j["periods"] = periods;
    j["total"] = format_fixed(r.total);
    j["total_exact"] = exact(r.total);
    j["upper_bound"] = format_fixed(r.upper_bound);
    return j;
  };

  nlohmann::ordered_json j;
  j["run"] = run_json(doc.run);
  j["theta"] = doc.selected.theta;
  j["theta_provenance"] = doc.theta_provenance;
  if (doc.selection) {
    j["theta_range"] = doc.selection->describe_range();
    j["selection_policy"] = to_string(doc.selection->policy);
  }
  j["estimate"] = report_json(doc.selected);
  if (!doc.theta_table.empty()) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : doc.theta_table)
      rows.push_back(report_json(r));
    j["theta_table"] = rows;
  }
  if (doc.error_table) {
    nlohmann::ordered_json e;
    e["theta_selected"] = doc.error_table->theta_selected;
    e["defined"] = doc.error_table->defined;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : doc.error_table->rows) {
      nlohmann::ordered_json r{{"theta", row.theta}, {"person_months", format_fixed(row.effort)}};
      r["error_pct"] = row.percent ? nlohmann::ordered_json(format_signed(*row.percent))
                                   : nlohmann::ordered_json(nullptr);
      rows.push_back(r);
    }
    e["rows"] = rows;
    j["error_table"] = e;
  }
  out << j.dump(2) << '\n';
}

void write_effort_csv(std::ostream& out, const EffortDocument& doc) {
  write_run_comments(out, doc.run);
  out << "# theta_provenance=" << doc.theta_provenance << '\n';
  out << "# upper_bound=" << format_fixed(doc.selected.upper_bound) << '\n';
  out << "theta,period_label,person_months,error_pct\n";
  for (const auto* r : table_rows(doc)) {
    for (const auto& p : r->per_period)
      out << r->theta << ',' << p.label << ',' << format_fixed(p.effort) << ",\n";
    out << r->theta << ",total," << format_fixed(r->total) << ','
        << error_cell(doc.error_table, r->theta) << '\n';
  }
}

void write_effort_markdown(std::ostream& out, const EffortDocument& doc) {
  out << "# Estimated effort (person-months)\n\n";
  out << "- tool: vcseffort " << tool_version() << '\n';
  out << "- command: " << doc.run.command << '\n';
  for (const auto& [k, v] : doc.run.config)
    out << "- " << k << ": `" << v << "`\n";
  out << "- theta: " << doc.selected.theta << " (" << doc.theta_provenance << ")\n";
  if (doc.selection)
    out << "- goodness-maximising range: " << doc.selection->describe_range() << '\n';
  out << "- upper bound (theta = 1): " << format_fixed(doc.selected.upper_bound) << " PM\n\n";

  out << "| theta |";
  for (const auto& p : doc.selected.per_period)
    out << ' ' << p.label << " |";
  out << " Total |";
  if (doc.error_table)
    out << " Error |";
  out << "\n|---:|";
  for (std::size_t i = 0; i < doc.selected.per_period.size(); ++i)
    out << "---:|";
  out << "---:|";
  if (doc.error_table)
    out << "---:|";
  out << '\n';

  for (const auto* r : table_rows(doc)) {
    bool chosen = r->theta == doc.selected.theta;
    out << "| " << (chosen ? "**" + std::to_string(r->theta) + "**" : std::to_string(r->theta)) << " |";
    for (const auto& p : r->per_period)
      out << ' ' << format_fixed(p.effort) << " |";
    out << ' ' << format_fixed(r->total) << " |";
    if (doc.error_table) {
      auto cell = error_cell(doc.error_table, r->theta);
      if (!cell.empty() && cell != "--" && cell != "undefined")
        cell += '%';
      out << ' ' << cell << " |";
    }
    out << '\n';
  }
}

void write_representativeness_csv(std::ostream& out, std::span<const RepresentativenessRow> rows,
                                  const RunInfo* run) {
  if (run)
    write_run_comments(out, *run);
  out << "cutoff,population,n,min,q1,median,mean,q3,max,D,p\n";
  auto stats = [](const FiveNumberSummary& s) {
    if (s.n == 0)
      return std::string(",,,,,");
    return fmt("%.2f", s.min) + ',' + fmt("%.2f", s.q1) + ',' + fmt("%.2f", s.median) + ',' +
           fmt("%.2f", s.mean) + ',' + fmt("%.2f", s.q3) + ',' + fmt("%.2f", s.max);
  };
  for (const auto& row : rows) {
    std::string test = row.ks ? fmt("%.4f", row.ks->d_statistic) + ',' + fmt("%.4g", row.ks->p_value)
                              : std::string("insufficient-data,");
    out << row.cutoff << ",all," << row.all.n << ',' << stats(row.all) << ',' << test << '\n';
    out << row.cutoff << ",survey," << row.surveyed.n << ',' << stats(row.surveyed) << ",,\n";
  }
}

} // namespace vcseffort
