#include "vcseffort/survey.hpp"

#include "vcseffort/error.hpp"

#include <ostream>
#include <set>
#include <sstream>

namespace vcseffort {

namespace {

constexpr std::string_view kHeader = "email,self_class,hours_bucket,survey_date,suspect";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (comma == std::string_view::npos)
      return out;
    pos = comma + 1;
  }
}

SelfClass parse_self_class(std::string_view s) {
  if (s == "full") return SelfClass::FullTime;
  if (s == "part") return SelfClass::PartTime;
  if (s == "occasional") return SelfClass::Occasional;
  if (s.empty()) return SelfClass::Empty;
  throw IngestError("unknown self_class '" + std::string(s) + "'");
}

HoursBucket parse_hours(std::string_view s) {
  if (s == "gt40") return HoursBucket::Over40;
  if (s == "40") return HoursBucket::H40;
  if (s == "30") return HoursBucket::H30;
  if (s == "20") return HoursBucket::H20;
  if (s == "10") return HoursBucket::H10;
  if (s == "lt5") return HoursBucket::Under5;
  if (s.empty()) return HoursBucket::Empty;
  throw IngestError("unknown hours_bucket '" + std::string(s) + "'");
}

bool parse_flag(std::string_view s) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false" || s.empty()) return false;
  throw IngestError("suspect must be 0/1/true/false, got '" + std::string(s) + "'");
}

bool forty_or_more(HoursBucket h) { return h == HoursBucket::Over40 || h == HoursBucket::H40; }
bool ten_or_less(HoursBucket h) { return h == HoursBucket::H10 || h == HoursBucket::Under5; }

} // namespace

std::vector<SurveyResponse> read_survey_csv(std::istream& in) {
  if (!in)
    throw IngestError("survey file is not readable");
  std::vector<SurveyResponse> out;
  std::string line;
  std::size_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (!header_seen) {
      if (line != kHeader)
        throw IngestError("survey header must be '" + std::string(kHeader) + "'");
      header_seen = true;
      continue;
    }
    try {
      auto f = split(line);
      if (f.size() != 5)
        throw IngestError("expected 5 columns, got " + std::to_string(f.size()));
      SurveyResponse r;
      r.respondent_email = std::string(f[0]);
      r.self_class = parse_self_class(f[1]);
      r.hours = parse_hours(f[2]);
      r.survey_date = parse_iso_date(f[3]);
      r.suspect = parse_flag(f[4]);
      if (r.respondent_email.empty())
        throw IngestError("empty email");
      out.push_back(std::move(r));
    } catch (const Error& e) {
      throw IngestError("survey line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return out;
}

void write_survey_csv(std::ostream& out, const std::vector<SurveyResponse>& responses) {
  out << kHeader << '\n';
  for (const auto& r : responses)
    out << r.respondent_email << ',' << to_string(r.self_class) << ',' << to_string(r.hours) << ',' << r.survey_date.iso() << ','
        << (r.suspect ? 1 : 0) << '\n';
}

std::optional<RuleOutcome> classify_response(SelfClass self_class, HoursBucket hours) {
  // Self-classification backed by a non-contradicting hours answer is triangulated.
  auto self = [&](Label label, bool consistent) {
    auto prov = consistent && hours != HoursBucket::Empty ? Provenance::Triangulated : Provenance::Self;
    return RuleOutcome{label, prov, consistent};
  };
  switch (self_class) {
  case SelfClass::FullTime:
    return self(Label::FullTime, !ten_or_less(hours));
  case SelfClass::PartTime:
  case SelfClass::Occasional:
    return self(Label::NonFullTime, !forty_or_more(hours));
  case SelfClass::Empty:
    break;
  }
  if (hours == HoursBucket::Empty)
    return std::nullopt;
  return RuleOutcome{forty_or_more(hours) ? Label::FullTime : Label::NonFullTime,
                     Provenance::Amended, true};
}

TriangulationResult triangulate(const std::vector<SurveyResponse>& responses, const Roster& roster,
                                const TriangulationOptions& opts) {
  TriangulationResult out;
  std::set<std::uint32_t> labeled;
  for (const auto& r : responses) {
    auto exclude = [&](ExclusionReason why) { out.exclusions.push_back({r.respondent_email, why}); };
    if (r.suspect) {
      exclude(ExclusionReason::Suspect);
      continue;
    }
    auto rule = classify_response(r.self_class, r.hours);
    if (!rule) {
      exclude(ExclusionReason::Empty);
      continue;
    }
    auto dev = roster.find_email(r.respondent_email);
    if (!dev) {
      exclude(ExclusionReason::Unmatched);
      continue;
    }
    if (labeled.contains(*dev)) {
      exclude(ExclusionReason::Duplicate);
      continue;
    }
    if (!rule->consistent && opts.drop_inconsistent) {
      exclude(ExclusionReason::Inconsistent);
      continue;
    }
    labeled.insert(*dev);
    if (!rule->consistent)
      ++out.inconsistent_kept;
    out.labels.push_back({roster[*dev].developer_id, *dev, rule->label, rule->provenance,
                          rule->consistent, r.survey_date});
  }
  return out;
}

std::string_view to_string(Label l) {
  return l == Label::FullTime ? "full-time" : "non-full-time";
}

std::string_view to_string(Provenance p) {
  switch (p) {
  case Provenance::Self: return "self";
  case Provenance::Triangulated: return "triangulated";
  case Provenance::Amended: return "amended";
  }
  return "?";
}

std::string_view to_string(ExclusionReason r) {
  switch (r) {
  case ExclusionReason::Suspect: return "suspect";
  case ExclusionReason::Empty: return "empty";
  case ExclusionReason::Unmatched: return "unmatched";
  case ExclusionReason::Duplicate: return "duplicate";
  case ExclusionReason::Inconsistent: return "inconsistent";
  }
  return "?";
}

std::string_view to_string(SelfClass c) {
  switch (c) {
  case SelfClass::FullTime: return "full";
  case SelfClass::PartTime: return "part";
  case SelfClass::Occasional: return "occasional";
  case SelfClass::Empty: return "";
  }
  return "?";
}

std::string_view to_string(HoursBucket h) {
  switch (h) {
  case HoursBucket::Over40: return "gt40";
  case HoursBucket::H40: return "40";
  case HoursBucket::H30: return "30";
  case HoursBucket::H20: return "20";
  case HoursBucket::H10: return "10";
  case HoursBucket::Under5: return "lt5";
  case HoursBucket::Empty: return "";
  }
  return "?";
}

} // namespace vcseffort
