#include "vcseffort/cli.hpp"

#include "config.hpp"
#include "vcseffort/activity.hpp"
#include "vcseffort/calibration.hpp"
#include "vcseffort/effort.hpp"
#include "vcseffort/error.hpp"
#include "vcseffort/identity.hpp"
#include "vcseffort/ingest.hpp"
#include "vcseffort/report.hpp"
#include "vcseffort/stats.hpp"
#include "vcseffort/survey.hpp"
#include "vcseffort/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace vcseffort::cli {

namespace fs = std::filesystem;

namespace {

struct PipelineOptions {
  std::string log, commits, repo;
  int period_months = 6;
  std::string alignment = "calendar";
  std::string anchor;
  std::string bots;
  bool exclude_merges = false;
  std::string aliases;
  bool name_merging = false;
  std::string survey;
  int theta = 0;
  int theta_max = 0;
  std::string metric = "commits";
  std::string select = "lower-median";
  std::string format = "json";
  std::string out = ".";
  bool drop_inconsistent = false;
  double max_malformed = 0.05;
  std::string cutoffs = "0,1,2,3,4,5,8,11";
  std::string config;
};

struct SynthOptions {
  std::uint32_t n_fulltime = 10;
  std::uint32_t n_other = 90;
  int theta_true = 20;
  double skew = 2.0;
  double noise = 0.0;
  std::uint64_t seed = 42;
  std::string survey_date = "2014-01-01";
  int period_months = 6;
  int history = 0;
  std::string log_format = "pipe";
  std::size_t bulk = 0;
  std::size_t authors = 3600;
  double bot_fraction = 0.0;
  double merge_fraction = 0.0;
  std::string out = ".";
  std::string config;
};

const std::set<std::string> kBooleanFlags = {"exclude-merges", "name-merging", "drop-inconsistent"};

void add_pipeline_options(CLI::App& app, PipelineOptions& o) {
  app.add_option("--log", o.log, "Pipe-delimited commit log (hash|email|name|timestamp|merge)");
  app.add_option("--commits", o.commits, "JSON-lines commit records");
  app.add_option("--repo", o.repo, "Git repository to read with `git log`");
  app.add_option("--period-months", o.period_months, "Period length in months")->check(CLI::PositiveNumber);
  app.add_option("--alignment", o.alignment, "Period alignment")->check(CLI::IsMember({"calendar", "rolling"}));
  app.add_option("--anchor", o.anchor, "Anchor date (YYYY-MM-DD) for rolling periods");
  app.add_option("--bots", o.bots, "Bot pattern file, one regex per line");
  app.add_flag("--exclude-merges", o.exclude_merges, "Drop merge commits");
  app.add_option("--aliases", o.aliases, "Alias CSV: alias_email_or_name,canonical_email");
  app.add_flag("--name-merging", o.name_merging, "Also merge identities with equal normalized names");
  app.add_option("--survey", o.survey, "Survey CSV");
  app.add_option("--theta", o.theta, "Explicit threshold")->check(CLI::PositiveNumber);
  app.add_option("--theta-max", o.theta_max, "Largest theta in sweeps and tables")->check(CLI::PositiveNumber);
  app.add_option("--metric", o.metric, "Activity metric")->check(CLI::IsMember({"commits", "active-days"}));
  app.add_option("--select", o.select, "Tie-breaking policy")->check(CLI::IsMember({"min", "max", "lower-median"}));
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "markdown"}));
  app.add_option("--out", o.out, "Output directory");
  app.add_flag("--drop-inconsistent", o.drop_inconsistent, "Exclude inconsistent survey responses");
  app.add_option("--max-malformed", o.max_malformed, "Tolerated fraction of malformed log lines")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--cutoffs", o.cutoffs, "Comma-separated minimum-activity cutoffs");
  app.add_option("--config", o.config, "Config file of key = value lines");
}

void add_synth_options(CLI::App& app, SynthOptions& o) {
  app.add_option("--n-fulltime", o.n_fulltime, "Full-time developers");
  app.add_option("--n-other", o.n_other, "Other developers");
  app.add_option("--theta-true", o.theta_true, "Planted threshold")->check(CLI::PositiveNumber);
  app.add_option("--skew", o.skew, "Power-law exponent");
  app.add_option("--noise", o.noise, "Label flip probability")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", o.seed, "RNG seed");
  app.add_option("--survey-date", o.survey_date, "Survey date (YYYY-MM-DD)");
  app.add_option("--period-months", o.period_months, "Survey window in months")->check(CLI::PositiveNumber);
  app.add_option("--history", o.history, "Extra windows of history before the survey window")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-format", o.log_format, "Commit log format")->check(CLI::IsMember({"pipe", "jsonl"}));
  app.add_option("--bulk", o.bulk, "Write a bulk log of this many commits instead of a population");
  app.add_option("--authors", o.authors, "Authors in a bulk log");
  app.add_option("--bot-fraction", o.bot_fraction, "Planted bot share of a bulk log")->check(CLI::Range(0.0, 1.0));
  app.add_option("--merge-fraction", o.merge_fraction, "Merge share of a bulk log")->check(CLI::Range(0.0, 1.0));
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--config", o.config, "Config file of key = value lines");
}

// ---------------------------------------------------------------------------

struct Loaded {
  std::vector<CommitRecord> commits;
  IdentityResolution ids;
};

ActivityMetric metric_of(const PipelineOptions& o) {
  return o.metric == "active-days" ? ActivityMetric::ActiveDays : ActivityMetric::Commits;
}

Loaded load_commits(const PipelineOptions& o, std::ostream& err) {
  int sources = !o.log.empty() + !o.commits.empty() + !o.repo.empty();
  if (sources != 1)
    throw ConfigError("exactly one of --log, --commits, --repo is required");

  ParseOptions popts;
  popts.max_malformed_fraction = o.max_malformed;
  ParseResult parsed;
  if (!o.log.empty()) {
    popts.format = LogFormat::Pipe;
    parsed = parse_log_file(o.log, popts);
  } else if (!o.commits.empty()) {
    popts.format = LogFormat::JsonLines;
    parsed = parse_log_file(o.commits, popts);
  } else {
    parsed = read_git_log(o.repo, popts);
  }
  for (const auto& m : parsed.malformed)
    err << "warning: line " << m.line_number << ": " << m.reason << '\n';

  std::vector<std::string> patterns;
  if (!o.bots.empty()) {
    std::ifstream in(o.bots);
    if (!in)
      throw IngestError("cannot open bot pattern file " + o.bots);
    patterns = read_bot_patterns(in);
  }
  auto filtered = apply_filters(parsed.commits, FilterConfig(std::move(patterns), o.exclude_merges));
  if (filtered.excluded_bot_count || filtered.excluded_merge_count)
    err << "filtered " << filtered.excluded_bot_count << " bot and " << filtered.excluded_merge_count
        << " merge commits\n";

  AliasMap aliases;
  if (!o.aliases.empty()) {
    std::ifstream in(o.aliases);
    if (!in)
      throw IngestError("cannot open alias file " + o.aliases);
    aliases = read_alias_csv(in);
  }
  Loaded out;
  out.commits = std::move(filtered.kept);
  out.ids = resolve_identities(out.commits, aliases, o.name_merging);
  return out;
}

TriangulationResult load_labels(const PipelineOptions& o, const Roster& roster, std::ostream& err) {
  std::ifstream in(o.survey);
  if (!in)
    throw IngestError("cannot open survey file " + o.survey);
  auto result = triangulate(read_survey_csv(in), roster, {o.drop_inconsistent});
  std::map<std::string_view, std::size_t> reasons;
  for (const auto& e : result.exclusions)
    ++reasons[to_string(e.reason)];
  err << "survey: " << result.labels.size() << " labeled, " << result.exclusions.size() << " excluded";
  for (const auto& [why, n] : reasons)
    err << " (" << why << ": " << n << ')';
  err << '\n';
  if (result.inconsistent_kept)
    err << "warning: " << result.inconsistent_kept << " inconsistent responses kept\n";
  if (result.labels.empty())
    throw CalibrationError("no survey labels matched the developer roster");
  return result;
}

PeriodSpec period_spec(const PipelineOptions& o) {
  PeriodSpec spec;
  spec.length_months = o.period_months;
  spec.alignment = o.alignment == "rolling" ? Alignment::Rolling : Alignment::CalendarHalfYear;
  if (!o.anchor.empty())
    spec.anchor = parse_iso_date(o.anchor);
  spec.validate();
  return spec;
}

RunInfo run_info(const std::string& command, const PipelineOptions& o) {
  RunInfo run;
  run.command = command;
  auto add = [&](const char* key, const std::string& value) {
    if (!value.empty())
      run.config.emplace_back(key, value);
  };
  add("log", o.log);
  add("commits", o.commits);
  add("repo", o.repo);
  add("period-months", std::to_string(o.period_months));
  add("alignment", o.alignment);
  add("anchor", o.anchor);
  add("bots", o.bots);
  add("exclude-merges", o.exclude_merges ? "true" : "false");
  add("aliases", o.aliases);
  add("name-merging", o.name_merging ? "true" : "false");
  add("survey", o.survey);
  if (o.theta)
    add("theta", std::to_string(o.theta));
  if (o.theta_max)
    add("theta-max", std::to_string(o.theta_max));
  add("metric", o.metric);
  add("select", o.select);
  if (command == "estimate")
    add("format", o.format);
  add("drop-inconsistent", o.drop_inconsistent ? "true" : "false");
  if (command == "representativeness")
    add("cutoffs", o.cutoffs);
  return run;
}

std::ofstream open_output_in(const std::string& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw IngestError("cannot write " + path.string());
  return out;
}

std::ofstream open_output(const PipelineOptions& o, const std::string& name) {
  return open_output_in(o.out, name);
}

struct Calibration {
  std::vector<ThresholdMetrics> sweep;
  ThetaSelection selection;
};

Calibration calibrate(const PipelineOptions& o, const Loaded& data, std::ostream& err) {
  auto labels = load_labels(o, data.ids.roster, err);
  auto sample = labeled_activity(data.commits, data.ids, labels.labels, o.period_months, metric_of(o));
  Calibration c;
  c.sweep = sweep(sample, o.theta_max ? std::optional<int>(o.theta_max) : std::nullopt);
  c.selection = select_theta(c.sweep, *parse_selection_policy(o.select));
  return c;
}

// ---------------------------------------------------------------------------

int cmd_calibrate(const PipelineOptions& o, std::ostream& out, std::ostream& err) {
  if (o.survey.empty())
    throw ConfigError("calibrate requires --survey");
  if (o.theta)
    throw ConfigError("calibrate derives theta; do not pass --theta");
  auto data = load_commits(o, err);
  auto cal = calibrate(o, data, err);
  auto run = run_info("calibrate", o);
  {
    auto f = open_output(o, "sweep.csv");
    write_sweep_csv(f, cal.sweep, &run);
  }
  {
    auto f = open_output(o, "selection.json");
    write_selection_json(f, cal.selection, cal.sweep, run);
  }
  out << selection_summary(cal.selection, cal.sweep) << '\n';
  return 0;
}

int cmd_estimate(const PipelineOptions& o, std::ostream& out, std::ostream& err) {
  bool explicit_theta = o.theta > 0;
  bool has_survey = !o.survey.empty();
  if (!explicit_theta && !has_survey)
    throw ConfigError("theta is unresolved: pass --theta N or --survey FILE to calibrate");
  if (explicit_theta && has_survey)
    throw ConfigError("pass either --theta or --survey, not both");

  auto spec = period_spec(o);
  auto data = load_commits(o, err);

  EffortDocument doc;
  doc.run = run_info("estimate", o);
  int theta = o.theta;
  if (explicit_theta) {
    doc.theta_provenance = "explicit";
  } else {
    auto cal = calibrate(o, data, err);
    doc.selection = cal.selection;
    doc.theta_provenance = "calibrated";
    theta = cal.selection.selected_theta;
  }

  auto matrix = aggregate(data.commits, data.ids, spec, metric_of(o));
  if (matrix.overflow())
    err << "warning: " << matrix.overflow() << " activity units fell outside every period\n";
  doc.selected = project_effort(matrix, theta);
  if (o.theta_max) {
    std::vector<int> thetas(static_cast<std::size_t>(o.theta_max));
    std::iota(thetas.begin(), thetas.end(), 1);
    doc.theta_table = effort_by_theta(matrix, thetas);
    doc.error_table = error_table(matrix, theta, thetas);
    if (!doc.error_table->defined)
      err << "warning: effort at the selected theta is 0; error table undefined\n";
  }

  {
    auto f = open_output(o, "activity.csv");
    write_activity_csv(f, matrix);
  }
  if (o.format == "json") {
    auto f = open_output(o, "effort.json");
    write_effort_json(f, doc);
  } else if (o.format == "csv") {
    auto f = open_output(o, "effort.csv");
    write_effort_csv(f, doc);
  } else {
    auto f = open_output(o, "effort.md");
    write_effort_markdown(f, doc);
  }
  out << "theta " << theta << " (" << doc.theta_provenance << "): total "
      << format_fixed(doc.selected.total) << " PM, upper bound "
      << format_fixed(doc.selected.upper_bound) << " PM over " << matrix.period_count()
      << " periods\n";
  return 0;
}

std::vector<std::uint32_t> parse_cutoffs(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size())
      throw ConfigError("invalid cutoff '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw ConfigError("no cutoffs given");
  return out;
}

int cmd_representativeness(const PipelineOptions& o, std::ostream& out, std::ostream& err) {
  if (o.survey.empty())
    throw ConfigError("representativeness requires --survey");
  auto cutoffs = parse_cutoffs(o.cutoffs);
  auto data = load_commits(o, err);
  auto labels = load_labels(o, data.ids.roster, err);

  Date anchor = labels.labels.front().survey_date;
  if (!o.anchor.empty())
    anchor = parse_iso_date(o.anchor);
  else
    for (const auto& l : labels.labels)
      anchor = std::max(anchor, l.survey_date);

  auto counts = activity_in_window(data.commits, data.ids, anchor, o.period_months, metric_of(o));
  ActivityByDeveloper all, surveyed;
  for (std::size_t d = 0; d < counts.size(); ++d)
    all[data.ids.roster[d].developer_id] = counts[d];
  for (const auto& l : labels.labels)
    surveyed[l.developer_id] = counts[l.developer];

  auto rows = representativeness_table(all, surveyed, cutoffs);
  auto run = run_info("representativeness", o);
  run.config.emplace_back("window-end", anchor.iso());
  {
    auto f = open_output(o, "representativeness.csv");
    write_representativeness_csv(f, rows, &run);
  }
  std::size_t insufficient = std::count_if(rows.begin(), rows.end(),
                                           [](const auto& r) { return r.insufficient_data(); });
  out << rows.size() << " cutoffs, " << insufficient << " with insufficient data; window ends "
      << anchor.iso() << '\n';
  return 0;
}

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  auto write_log = [&](const std::vector<CommitRecord>& commits) {
    bool jsonl = o.log_format == "jsonl";
    auto f = open_output_in(o.out, jsonl ? "commits.jsonl" : "commits.log");
    for (const auto& c : commits)
      f << (jsonl ? to_json_line(c) : to_pipe_line(c)) << '\n';
  };

  if (o.bulk > 0) {
    LogSpec spec;
    spec.commits = o.bulk;
    spec.authors = o.authors;
    spec.bot_fraction = o.bot_fraction;
    spec.merge_fraction = o.merge_fraction;
    spec.seed = o.seed;
    write_log(synthetic_log(spec));
    out << "wrote " << o.bulk << " commits\n";
    return 0;
  }

  PopulationSpec spec;
  spec.n_fulltime = o.n_fulltime;
  spec.n_other = o.n_other;
  spec.theta_true = o.theta_true;
  spec.skew_exponent = o.skew;
  spec.label_noise = o.noise;
  spec.seed = o.seed;
  auto pop = generate(spec);
  auto date = parse_iso_date(o.survey_date);
  auto fx = materialize(pop, date, o.period_months, o.history);
  write_log(fx.commits);
  {
    auto f = open_output_in(o.out, "survey.csv");
    write_survey_csv(f, fx.responses);
  }
  {
    nlohmann::ordered_json truth;
    truth["seed"] = spec.seed;
    truth["theta_true"] = spec.theta_true;
    truth["label_noise"] = spec.label_noise;
    truth["survey_date"] = date.iso();
    truth["window_months"] = o.period_months;
    auto devs = nlohmann::ordered_json::array();
    for (const auto& d : pop.developers)
      devs.push_back({{"id", d.id},
                      {"activity", d.activity},
                      {"full_time", d.full_time},
                      {"labeled_full_time", d.labeled_full_time}});
    truth["developers"] = devs;
    auto f = open_output_in(o.out, "truth.json");
    f << truth.dump(2) << '\n';
  }
  out << "wrote " << fx.commits.size() << " commits and " << fx.responses.size()
      << " survey responses\n";
  return 0;
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0)
      return args[i].substr(9);
  }
  return {};
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate development effort in person-months from version-control activity"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  PipelineOptions popts;
  SynthOptions sopts;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Sweep theta against survey labels and select it");
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate per-period and total effort");
  auto* repr_cmd = app.add_subcommand("representativeness", "Compare surveyed and overall activity");
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic commit log and survey");
  add_pipeline_options(*calibrate_cmd, popts);
  add_pipeline_options(*estimate_cmd, popts);
  add_pipeline_options(*repr_cmd, popts);
  add_synth_options(*synth_cmd, sopts);

  try {
    auto args = raw_args;
    if (auto cfg = config_path(args); !cfg.empty())
      args = merge_config(std::move(args), read_config_file(cfg), kBooleanFlags);

    std::vector<char*> argv;
    for (auto& a : args)
      argv.push_back(a.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    if (calibrate_cmd->parsed())
      return cmd_calibrate(popts, out, err);
    if (estimate_cmd->parsed())
      return cmd_estimate(popts, out, err);
    if (repr_cmd->parsed())
      return cmd_representativeness(popts, out, err);
    return cmd_synth(sopts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace vcseffort::cli
