#include "../../src/cli/config.hpp"
#include "vcseffort/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kFixtures = VCSEFFORT_FIXTURES;

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vcseffort");
  std::ostringstream out, err;
  int code = vcseffort::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vcseffort_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

} // namespace

TEST_F(CliTest, CalibrateOnSmallTeam) {
  auto r = invoke({"calibrate", "--log", kFixtures + "/small_team/commits.log", "--survey",
                   kFixtures + "/small_team/survey.csv", "--period-months", "1", "--theta-max", "13",
                   "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "theta range [9,11], selected 10, goodness 0.80\n");
  EXPECT_TRUE(fs::exists(path("out/sweep.csv")));
  EXPECT_TRUE(fs::exists(path("out/selection.json")));
}

TEST_F(CliTest, EstimateWritesAllFormats) {
  auto r = invoke({"estimate", "--log", kFixtures + "/small_team/commits.log", "--theta", "10",
                   "--period-months", "1", "--alignment", "rolling", "--anchor", "2013-02-01",
                   "--theta-max", "13", "--format", "markdown", "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("theta 10 (explicit): total 6.60 PM"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(path("out/activity.csv")));
  EXPECT_TRUE(fs::exists(path("out/effort.md")));
  EXPECT_FALSE(fs::exists(path("out/effort.json")));
  auto md = slurp(path("out/effort.md"));
  EXPECT_NE(md.find("+21.21"), std::string::npos);
  EXPECT_NE(md.find("-16.08"), std::string::npos);
}

TEST_F(CliTest, UnresolvedThetaIsUsageError) {
  auto r = invoke({"estimate", "--log", kFixtures + "/small_team/commits.log", "--out", path("o")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("theta"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"estimate", "--log", path("missing.log"), "--theta", "3", "--out", path("o")}).code, 1);
  EXPECT_EQ(invoke({"estimate", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"calibrate", "--log", kFixtures + "/small_team/commits.log", "--theta", "4",
                    "--survey", kFixtures + "/small_team/survey.csv", "--out", path("o")})
                .code,
            2);
  std::ofstream(path("bots.txt")) << "(\n";
  EXPECT_EQ(invoke({"estimate", "--log", kFixtures + "/small_team/commits.log", "--theta", "3",
                    "--bots", path("bots.txt"), "--out", path("o")})
                .code,
            2);
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  std::ofstream(path("run.cfg")) << "# defaults\nperiod-months = 1\ntheta-max = 13\n"
                                    "name-merging = false\nsurvey = "
                                 << kFixtures << "/small_team/survey.csv\n";
  auto r = invoke({"calibrate", "--log", kFixtures + "/small_team/commits.log", "--config",
                   path("run.cfg"), "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "theta range [9,11], selected 10, goodness 0.80\n");
}

TEST(CliConfig, MergeKeepsExplicitFlags) {
  using vcseffort::cli::merge_config;
  auto args = merge_config({"vcseffort", "estimate", "--theta", "4"},
                           {{"theta", "9"}, {"period-months", "1"}, {"exclude-merges", "true"},
                            {"name-merging", "false"}},
                           {"exclude-merges", "name-merging"});
  EXPECT_EQ(args, (std::vector<std::string>{"vcseffort", "estimate", "--theta", "4",
                                            "--period-months", "1", "--exclude-merges"}));
}

TEST_F(CliTest, SynthThenCalibrateRecoversPlantedGap) {
  auto s = invoke({"synth", "--seed", "42", "--theta-true", "12", "--out", path("fx")});
  ASSERT_EQ(s.code, 0) << s.err;
  auto r = invoke({"calibrate", "--log", path("fx/commits.log"), "--survey", path("fx/survey.csv"),
                   "--out", path("cal")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("goodness 1.00"), std::string::npos) << r.out;
  auto truth = slurp(path("fx/truth.json"));
  EXPECT_NE(truth.find("\"theta_true\""), std::string::npos);
}

TEST_F(CliTest, RepresentativenessReport) {
  auto r = invoke({"representativeness", "--log", kFixtures + "/small_team/commits.log", "--survey",
                   kFixtures + "/small_team/survey.csv", "--period-months", "1", "--cutoffs", "0,5,20",
                   "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto csv = slurp(path("out/representativeness.csv"));
  EXPECT_NE(csv.find("insufficient-data"), std::string::npos);
}
