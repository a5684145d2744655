#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GPT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("gpt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path dir;
};

TEST_F(Cli, FrameAndDMatrix) {
  const auto frame = run("frame --n 2");
  ASSERT_EQ(frame.code, 0);
  const auto j = json::parse(frame.out);
  EXPECT_EQ(j.at("K"), 4);
  EXPECT_EQ(j.at("projectors").size(), 4u);

  const auto csv = run("dmatrix --n 2 --csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.substr(0, 2), "1,");
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 4);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frame").code, 2);
  EXPECT_EQ(run("frame --n 0").code, 2);
  EXPECT_EQ(run("bloch --a 2 --b 0.5 --c 0.5").code, 2);
  EXPECT_EQ(run("verify --theory real --n 2").code, 2);
  EXPECT_EQ(run("convert --in " + write("bad.json", "{not json") + " --from rho --to p").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, BlochClassification) {
  const auto r = run("bloch --a 0.5 --b 0.5 --c 0.5 --projectors");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ellipsoid"), std::string::npos);
  EXPECT_NE(run("bloch --a 1 --b 0 --c 0.5").out.find("hyperboloid"), std::string::npos);
}

TEST_F(Cli, VerifyExitCodes) {
  EXPECT_EQ(run("verify --theory quantum --n 2 --seed 3").code, 0);
  const auto c = run("verify --theory classical --n 2 --seed 3");
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("expected-fail"), std::string::npos);
}

TEST_F(Cli, TransposeSuperoperatorFailsChecks) {
  // column-major vec: entry (r, c) at r + 2c; transpose swaps indices 1 and 2
  const auto path = write("t.json",
                          "[[[1,0],[0,0],[0,0],[0,0]],"
                          "[[0,0],[0,0],[1,0],[0,0]],"
                          "[[0,0],[1,0],[0,0],[0,0]],"
                          "[[0,0],[0,0],[0,0],[1,0]]]");
  const auto r = run("transform --superop " + path + " --n 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("fail"), std::string::npos);
}

TEST_F(Cli, UnitaryTransform) {
  const auto path = write("x.json", "[[[0,0],[1,0]],[[1,0],[0,0]]]");
  const auto r = run("transform --unitary " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(json::parse(r.out).dump().find("\"reversible\""), std::string::npos);
}

TEST_F(Cli, ConvertDensityToP) {
  const auto path = write("rho.json", "[[[1,0],[0,0]],[[0,0],[0,0]]]");
  const auto r = run("convert --in " + path + " --from rho --to p");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  const std::vector<double> expected{1.0, 0.0, 0.5, 0.5};
  const auto values = j.at("values").get<std::vector<double>>();
  ASSERT_EQ(values.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(values[k], expected[k], 1e-15);
  EXPECT_EQ(j.at("pure"), true);
}

TEST_F(Cli, SimulateWritesCsv) {
  const auto cfg = write("sim.ini", "seed = 4\n[simulate]\nn = 2\nshots = 20000\nprep_basis = 1\n");
  const auto csv = (dir / "counts.csv").string();
  const auto r = run("simulate --config " + cfg + " --csv " + csv);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(csv);
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(all, "outcome,count\n0,0\n1,0\n2,20000\n");
}

TEST_F(Cli, ReportWritesFiles) {
  const auto cfg = write("r.ini", "seed = 2\n[frame]\nn = 3\n[verify]\ntheory = quantum\nn = 2\n");
  const auto out = dir / "out";
  const auto r = run("report --config " + cfg + " --out-dir " + out.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "summary.csv"));
  std::ifstream in(out / "report.json");
  EXPECT_EQ(json::parse(in).at("status"), "pass");
}

}  // namespace
