#include "vcseffort/report.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace vcseffort;

namespace {

std::vector<ThresholdMetrics> table_sweep() {
  std::vector<LabeledActivity> sample = {{12, true}, {10, true}, {13, true}, {3, false},
                                         {11, false}, {8, false}, {10, true}, {5, false}};
  return sweep(sample, 13);
}

} // namespace

TEST(Report, GoodnessFromExactFraction) {
  EXPECT_EQ(format_goodness({4, 1, 0, 3}), "0.80");
  EXPECT_EQ(format_goodness({0, 0, 0, 4}), "1.00");
  EXPECT_EQ(format_goodness({1, 0, 7, 0}, 3), "0.125");
}

TEST(Report, SweepCsvLayout) {
  auto s = table_sweep();
  RunInfo run{"calibrate", {{"period-months", "1"}}};
  std::ostringstream out;
  write_sweep_csv(out, s, &run);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line))
    lines.push_back(line);
  ASSERT_GE(lines.size(), 4u + 13u);
  EXPECT_EQ(lines[0].rfind("# tool=vcseffort ", 0), 0u);
  EXPECT_EQ(lines[1], "# command=calibrate");
  EXPECT_EQ(lines[2], "# period-months=1");
  EXPECT_EQ(lines[3], "theta,tp,fp,fn,tn,precision,recall,accuracy,f_measure,goodness,compensation");
  EXPECT_EQ(lines[4 + 9].rfind("10,4,1,0,3,", 0), 0u);
  EXPECT_NE(lines[4 + 9].find(",0.800000,-1"), std::string::npos);
}

TEST(Report, SelectionSummaryAndJson) {
  auto s = table_sweep();
  auto sel = select_theta(s);
  EXPECT_EQ(selection_summary(sel, s), "theta range [9,11], selected 10, goodness 0.80");
  std::ostringstream out;
  write_selection_json(out, sel, s, {"calibrate", {}});
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["selected_theta"], 10);
  EXPECT_EQ(j["argmax"], nlohmann::json::array({9, 10, 11}));
}

TEST(Report, EffortCsvHasTotals) {
  ActivityMatrix m({"a", "b"}, {{"p1", 0, 10}, {"p2", 10, 20}}, ActivityMetric::Commits, 6,
                   {4, 0, 10, 10}, 0);
  EffortDocument doc;
  doc.run = {"estimate", {}};
  doc.theta_provenance = "explicit";
  doc.selected = project_effort(m, 8);
  std::ostringstream out;
  write_effort_csv(out, doc);
  auto text = out.str();
  EXPECT_NE(text.find("# theta_provenance=explicit\n# upper_bound=18.00\n"), std::string::npos);
  std::string body = "theta,period_label,person_months,error_pct\n"
                     "8,p1,9.00,\n"
                     "8,p2,6.00,\n"
                     "8,total,15.00,\n";
  ASSERT_GE(text.size(), body.size());
  EXPECT_EQ(text.substr(text.size() - body.size()), body);
}

TEST(Report, RepresentativenessCsvMarksEmptyPopulations) {
  ActivityByDeveloper all = {{"a", 1}, {"b", 4}}, surveyed = {{"b", 4}};
  std::vector<std::uint32_t> cutoffs = {0, 10};
  auto rows = representativeness_table(all, surveyed, cutoffs);
  std::ostringstream out;
  write_representativeness_csv(out, rows);
  auto text = out.str();
  EXPECT_EQ(text.rfind("cutoff,population,n,min,q1,median,mean,q3,max,D,p\n", 0), 0u);
  EXPECT_NE(text.find("insufficient-data"), std::string::npos);
}
