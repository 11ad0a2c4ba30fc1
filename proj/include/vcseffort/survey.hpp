#pragma once

#include "vcseffort/civil_time.hpp"
#include "vcseffort/identity.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vcseffort {

enum class SelfClass { FullTime, PartTime, Occasional, Empty };
enum class HoursBucket { Over40, H40, H30, H20, H10, Under5, Empty };

struct SurveyResponse {
  std::string respondent_email;
  SelfClass self_class = SelfClass::Empty;
  HoursBucket hours = HoursBucket::Empty;
  Date survey_date{};
  bool suspect = false; // flagged by a reviewer from the free-text answer
};

enum class Label { FullTime, NonFullTime };
enum class Provenance { Self, Triangulated, Amended };

struct SurveyLabel {
  DeveloperId developer_id;
  std::uint32_t developer = 0; // roster index
  Label label = Label::NonFullTime;
  Provenance provenance = Provenance::Self;
  bool consistent = true;
  Date survey_date{}; // end of this respondent's activity window
};

enum class ExclusionReason { Suspect, Empty, Unmatched, Duplicate, Inconsistent };

struct Exclusion {
  std::string respondent_email;
  ExclusionReason reason;
};

struct TriangulationOptions {
  bool drop_inconsistent = false;
};

struct TriangulationResult {
  std::vector<SurveyLabel> labels;
  std::vector<Exclusion> exclusions;
  std::size_t inconsistent_kept = 0;
};

/// Header must be exactly `email,self_class,hours_bucket,survey_date,suspect`.
/// self_class: full|part|occasional|<empty>; hours_bucket: gt40|40|30|20|10|lt5|<empty>;
/// suspect: 0|1|true|false|<empty>. Throws IngestError with the line number.
std::vector<SurveyResponse> read_survey_csv(std::istream& in);
void write_survey_csv(std::ostream& out, const std::vector<SurveyResponse>& responses);

/// Label rules, first match wins:
///   full              -> full-time (self, or triangulated if hours agree)
///   part | occasional -> non-full-time (self, or triangulated if hours agree)
///   empty, >=40h      -> full-time (amended)
///   empty, <40h       -> non-full-time (amended)
/// A label is inconsistent when a full-timer reports <=10h or a part-timer
/// or occasional contributor reports >=40h.
TriangulationResult triangulate(const std::vector<SurveyResponse>& responses, const Roster& roster,
                                const TriangulationOptions& opts = {});

/// The rule table alone, without roster matching. nullopt when both fields are empty.
struct RuleOutcome {
  Label label;
  Provenance provenance;
  bool consistent;
};
std::optional<RuleOutcome> classify_response(SelfClass self_class, HoursBucket hours);

std::string_view to_string(Label l);
std::string_view to_string(Provenance p);
std::string_view to_string(ExclusionReason r);
std::string_view to_string(SelfClass c);
std::string_view to_string(HoursBucket h);

} // namespace vcseffort
