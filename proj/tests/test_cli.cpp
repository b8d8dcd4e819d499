#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alexlab/cli/app.hpp"
#include "alexlab/cli/output.hpp"

namespace {

namespace fs = std::filesystem;
using namespace alexlab::cli;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("alexlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "alexlab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    ::testing::internal::CaptureStdout();
    ::testing::internal::CaptureStderr();
    const int code = run_cli(static_cast<int>(argv.size()), argv.data());
    out = ::testing::internal::GetCapturedStdout();
    err = ::testing::internal::GetCapturedStderr();
    return code;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) v.push_back(l);
    return v;
  }

  fs::path dir;
  std::string out;
  std::string err;
};

TEST_F(Cli, AnalyzeSphere) {
  const std::string cfg = write("c.json", R"({"surface": "sphere", "samples": 3000, "directions": 6})");
  ASSERT_EQ(run({"analyze", "--config", cfg, "--out", (dir / "o").string()}), 0) << err;
  const auto rows = lines(slurp(dir / "o" / "report.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "eps,osc_H,r,R,gap,C_emp,max_plane_dist,sup_defect,slope_so_far");
  const auto j = nlohmann::json::parse(slurp(dir / "o" / "report.json"));
  EXPECT_LT(j["rows"][0]["gap"].get<double>(), 1e-7);
  EXPECT_TRUE(j["rows"][0]["C_emp"].is_null());
  EXPECT_NE(rows[1].find(",nan,"), std::string::npos);
}

TEST_F(Cli, AnalyzePerturbedHasDirectionRows) {
  const std::string cfg = write("c.json", R"({"eps": 0.02, "samples": 2000, "directions": 5, "profile": "tesseral"})");
  ASSERT_EQ(run({"analyze", "--config", cfg, "--out", (dir / "o").string()}), 0) << err;
  const auto j = nlohmann::json::parse(slurp(dir / "o" / "report.json"));
  const auto& d = j["rows"][0]["directions"];
  ASSERT_EQ(d.size(), 5u);
  for (const auto& x : d) {
    EXPECT_EQ(x["omega"].size(), 3u);
    EXPECT_GE(x["plane_dist"].get<double>(), 0.0);
    EXPECT_TRUE(x["tangency"] == "interior" || x["tangency"] == "boundary");
  }
  EXPECT_GT(j["rows"][0]["gap"].get<double>(), 0.0);
}

TEST_F(Cli, MalformedConfigExitsTwoWithLine) {
  const std::string cfg = write("c.json", "{\n  \"samples\": 2000,\n  \"eps\": \n}\n");
  EXPECT_EQ(run({"analyze", "--config", cfg, "--out", (dir / "o").string()}), 2);
  EXPECT_NE(err.find("line 4"), std::string::npos) << err;
  EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST_F(Cli, UnknownKeyAndBadTypeExitTwo) {
  const std::string a = write("a.json", "{\n  \"samples\": 2000,\n  \"sampels\": 3\n}\n");
  EXPECT_EQ(run({"analyze", "--config", a}), 2);
  EXPECT_NE(err.find("line 3, field 'sampels': unknown key"), std::string::npos) << err;
  const std::string b = write("b.json", "{\"samples\": \"many\"}");
  EXPECT_EQ(run({"analyze", "--config", b}), 2);
  EXPECT_NE(err.find("field 'samples'"), std::string::npos) << err;
  const std::string c = write("c.json", "{\"eps_grid\": [0.01, 0.02]}");
  EXPECT_EQ(run({"sweep", "--config", c}), 2);
}

TEST_F(Cli, EngineFailureExitsOneWithoutFiles) {
  // eps sup|f| beyond r0 / 2 is rejected by the surface family.
  const std::string cfg = write("c.json", R"({"eps": 0.9, "samples": 500, "directions": 3})");
  EXPECT_EQ(run({"analyze", "--config", cfg, "--out", (dir / "o").string()}), 1);
  EXPECT_FALSE(err.empty());
  EXPECT_FALSE(fs::exists(dir / "o" / "report.csv"));
}

TEST_F(Cli, SweepFourRowsDeterministic) {
  const std::string cfg =
      write("c.json", R"({"eps_grid": [0.08, 0.04, 0.02, 0.01], "samples": 1500, "directions": 4, "seed": 9})");
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", (dir / "a").string(), "--svg"}), 0) << err;
  ASSERT_EQ(run({"sweep", "--config", cfg, "--out", (dir / "b").string(), "--threads", "2"}), 0) << err;
  const std::string a = slurp(dir / "a" / "report.csv");
  EXPECT_EQ(a, slurp(dir / "b" / "report.csv"));
  const auto rows = lines(a);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NE(rows.back().substr(rows.back().rfind(',') + 1), "nan");
  EXPECT_TRUE(fs::exists(dir / "a" / "gap_vs_osc.svg"));
  EXPECT_FALSE(fs::exists(dir / "b" / "gap_vs_osc.svg"));
  for (const auto& e : fs::directory_iterator(dir / "a")) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST_F(Cli, SweepEmptyGridExitsTwo) {
  const std::string cfg = write("c.json", R"({"eps_grid": []})");
  EXPECT_EQ(run({"sweep", "--config", cfg}), 2);
  EXPECT_EQ(run({"sweep"}), 2);
}

TEST_F(Cli, CheckPropsAndNegativeControl) {
  const std::string cfg = write("c.json", R"({"configs": 12, "property_cases": 200, "transport_cases": 40})");
  ASSERT_EQ(run({"check-props", "--config", cfg, "--out", (dir / "ok").string()}), 0) << err;
  const auto rows = lines(slurp(dir / "ok" / "props.csv"));
  EXPECT_EQ(rows[0], "config_id,bound_id,worst_slack,n_samples,violated,max_discrepancy");
  bool transport = false;
  for (const auto& r : rows) {
    if (r.rfind("core,transport.ode_discrepancy,", 0) == 0) transport = true;
    EXPECT_EQ(r.find(",1,"), std::string::npos) << r;
  }
  EXPECT_TRUE(transport);
  EXPECT_EQ(run({"check-props", "--config", cfg, "--out", (dir / "neg").string(), "--negative-control"}), 1);
  int violated = 0;
  for (const auto& r : lines(slurp(dir / "neg" / "props.csv"))) violated += r.find(",1,") != std::string::npos;
  EXPECT_GT(violated, 0);
}

TEST_F(Cli, TransportWorkedCase) {
  ASSERT_EQ(run({"transport", "--from", "0,1,1", "--to", "0,0,1", "--vector", "0,1,0"}), 0) << err;
  const auto j = nlohmann::json::parse(out);
  EXPECT_NEAR(j["closed_form"][1].get<double>(), 0.6, 1e-12);
  EXPECT_NEAR(j["closed_form"][2].get<double>(), 0.8, 1e-12);
  EXPECT_LT(j["discrepancy"].get<double>(), 1e-9);
  EXPECT_EQ(run({"transport", "--from", "0,1,-1", "--to", "0,0,1", "--vector", "0,1,0"}), 2);
}

TEST(Config, ThreadsFallBackToEnvironment) {
  Overrides o;
  ::setenv("ALEXLAB_THREADS", "3", 1);
  EXPECT_EQ(resolve("", o).threads, 3);
  o.threads = 2;
  EXPECT_EQ(resolve("", o).threads, 2);
  ::unsetenv("ALEXLAB_THREADS");
  o.threads.reset();
  EXPECT_EQ(resolve("", o).threads, 1);
}

TEST(Config, DefaultsAndValidation) {
  const RunConfig c = parse_config("{}");
  EXPECT_EQ(c.n, 3);
  EXPECT_EQ(c.samples, 10000);
  EXPECT_NO_THROW(parse_config(R"({"eps_grid": [0]})"));
  EXPECT_THROW(parse_config(R"({"eps_grid": [0, 0.1]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"center": [0, 0]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"center": [0, 0, -1]})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"n": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"profile": "wavy"})"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Output, SeventeenDigits) {
  EXPECT_EQ(fmt(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(fmt(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(fmt(std::nan("")), "nan");
}

}  // namespace
