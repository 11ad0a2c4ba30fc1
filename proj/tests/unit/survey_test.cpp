#include "oracles.hpp"

#include "vcseffort/error.hpp"
#include "vcseffort/survey.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace vcseffort;

namespace {

const SelfClass kClasses[] = {SelfClass::FullTime, SelfClass::PartTime, SelfClass::Occasional,
                              SelfClass::Empty};
const HoursBucket kHours[] = {HoursBucket::Over40, HoursBucket::H40, HoursBucket::H30,
                              HoursBucket::H20,    HoursBucket::H10, HoursBucket::Under5,
                              HoursBucket::Empty};

Roster roster_of(std::size_t n) {
  std::vector<CommitRecord> cs;
  for (std::size_t i = 0; i < n; ++i)
    cs.push_back({"h" + std::to_string(i), "D" + std::to_string(i),
                  "d" + std::to_string(i) + "@x.org", 100, false});
  return resolve_identities(cs, {}).roster;
}

} // namespace

TEST(SurveyRules, EveryCombinationMatchesRuleTable) {
  for (auto c : kClasses)
    for (auto h : kHours) {
      auto got = classify_response(c, h);
      auto want = oracle::rule_table(c, h);
      ASSERT_EQ(got.has_value(), want.has_value()) << to_string(c) << "/" << to_string(h);
      if (!got)
        continue;
      EXPECT_EQ(got->label, want->label) << to_string(c) << "/" << to_string(h);
      EXPECT_EQ(got->provenance, want->provenance) << to_string(c) << "/" << to_string(h);
      EXPECT_EQ(got->consistent, want->consistent) << to_string(c) << "/" << to_string(h);
    }
}

TEST(SurveyRules, HundredPlantedResponses) {
  std::mt19937_64 rng(31);
  auto roster = roster_of(100);
  std::vector<SurveyResponse> responses;
  for (std::size_t i = 0; i < 100; ++i) {
    SurveyResponse r;
    r.respondent_email = "d" + std::to_string(i) + "@x.org";
    r.self_class = kClasses[rng() % 4];
    r.hours = kHours[rng() % 7];
    r.survey_date = Date::from_ymd(2013, 2, 1);
    responses.push_back(r);
  }
  auto result = triangulate(responses, roster);
  std::size_t expected_labels = 0, inconsistent = 0;
  for (const auto& r : responses) {
    auto want = oracle::rule_table(r.self_class, r.hours);
    if (!want)
      continue;
    ++expected_labels;
    inconsistent += !want->consistent;
    auto dev = roster.find_email(r.respondent_email);
    auto it = std::find_if(result.labels.begin(), result.labels.end(),
                           [&](const SurveyLabel& l) { return l.developer == *dev; });
    ASSERT_NE(it, result.labels.end());
    EXPECT_EQ(it->label, want->label);
    EXPECT_EQ(it->provenance, want->provenance);
    EXPECT_EQ(it->consistent, want->consistent);
  }
  EXPECT_EQ(result.labels.size(), expected_labels);
  EXPECT_EQ(result.inconsistent_kept, inconsistent);
  EXPECT_EQ(result.labels.size() + result.exclusions.size(), responses.size());

  auto dropped = triangulate(responses, roster, {.drop_inconsistent = true});
  EXPECT_EQ(dropped.labels.size(), expected_labels - inconsistent);
  EXPECT_EQ(dropped.inconsistent_kept, 0u);
}

TEST(Triangulate, ExclusionReasonsInOrder) {
  auto roster = roster_of(3);
  auto date = Date::from_ymd(2013, 2, 1);
  std::vector<SurveyResponse> rs = {
      {"d0@x.org", SelfClass::FullTime, HoursBucket::Over40, date, true},
      {"d1@x.org", SelfClass::Empty, HoursBucket::Empty, date, false},
      {"ghost@x.org", SelfClass::FullTime, HoursBucket::H40, date, false},
      {"D2@X.org", SelfClass::PartTime, HoursBucket::H20, date, false},
      {"d2@x.org", SelfClass::FullTime, HoursBucket::H40, date, false},
  };
  auto r = triangulate(rs, roster);
  ASSERT_EQ(r.labels.size(), 1u);
  EXPECT_EQ(r.labels[0].developer_id, "d2@x.org");
  EXPECT_EQ(r.labels[0].label, Label::NonFullTime);
  ASSERT_EQ(r.exclusions.size(), 4u);
  EXPECT_EQ(r.exclusions[0].reason, ExclusionReason::Suspect);
  EXPECT_EQ(r.exclusions[1].reason, ExclusionReason::Empty);
  EXPECT_EQ(r.exclusions[2].reason, ExclusionReason::Unmatched);
  EXPECT_EQ(r.exclusions[3].reason, ExclusionReason::Duplicate);
}

TEST(SurveyCsv, RoundTrip) {
  std::mt19937_64 rng(32);
  std::vector<SurveyResponse> rs;
  for (int i = 0; i < 50; ++i)
    rs.push_back({"p" + std::to_string(i) + "@x.org", kClasses[rng() % 4], kHours[rng() % 7],
                  Date::from_ymd(2013, 1 + static_cast<unsigned>(rng() % 12), 1), rng() % 3 == 0});
  std::stringstream io;
  write_survey_csv(io, rs);
  auto back = read_survey_csv(io);
  ASSERT_EQ(back.size(), rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(back[i].respondent_email, rs[i].respondent_email);
    EXPECT_EQ(back[i].self_class, rs[i].self_class);
    EXPECT_EQ(back[i].hours, rs[i].hours);
    EXPECT_EQ(back[i].survey_date, rs[i].survey_date);
    EXPECT_EQ(back[i].suspect, rs[i].suspect);
  }
}

TEST(SurveyCsv, Errors) {
  std::istringstream bad_header("mail,self_class\n");
  EXPECT_THROW(read_survey_csv(bad_header), IngestError);
  std::istringstream bad_class("email,self_class,hours_bucket,survey_date,suspect\n"
                               "a@x,always,40,2013-01-01,0\n");
  try {
    read_survey_csv(bad_class);
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad_date("email,self_class,hours_bucket,survey_date,suspect\n"
                              "a@x,full,40,2013-13-01,0\n");
  EXPECT_THROW(read_survey_csv(bad_date), IngestError);
  std::istringstream empty("");
  EXPECT_TRUE(read_survey_csv(empty).empty());
}
