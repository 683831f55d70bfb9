#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace wrinkle;

namespace {

std::string config(const std::string& name) { return std::string(WRINKLE_CONFIG_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("wrinkle_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"solve", "/nonexistent.ini"}).code, cli::kExitUsage);
  TempDir t;
  EXPECT_EQ(run({"audit", config("bad_stiffness.ini"), "--out", t.path.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"energy", config("fixture.ini"), "--out", t.path.string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"export-surface", config("fixture.ini"), "--thickness", "2^-8", "--out", t.path.string()}).code,
            cli::kExitUsage);
}

TEST(Cli, AuditPassesForNeoHookeanAndFailsForCoupled) {
  TempDir t;
  EXPECT_EQ(run({"audit", config("neo_hookean.ini"), "--out", t.path.string()}).code, cli::kExitOk);
  EXPECT_TRUE(fs::exists(t.path / "audit_summary.json"));
  const Outcome bad = run({"audit", config("coupled.ini"), "--out", t.path.string()});
  EXPECT_EQ(bad.code, cli::kExitFailure);
  EXPECT_GT(lines(slurp(t.path / "audit_failures.csv")).size(), 1u);
}

TEST(Cli, SolveWritesSolutionAndSummary) {
  TempDir t;
  ASSERT_EQ(run({"solve", config("fixture.ini"), "--out", t.path.string()}).code, cli::kExitOk);
  const auto j = nlohmann::json::parse(slurp(t.path / "solution.json"));
  EXPECT_NEAR(j["free_boundary"].get<double>(), 1.26647, 1e-4);
  EXPECT_GT(lines(slurp(t.path / "solution.csv")).size(), 2048u);
}

TEST(Cli, HomogeneousSolveReportsNoRelaxedRegion) {
  TempDir t;
  ASSERT_EQ(run({"solve", config("homogeneous.ini"), "--out", t.path.string()}).code, cli::kExitOk);
  EXPECT_NE(slurp(t.path / "solution.json").find("no relaxed region"), std::string::npos);
}

TEST(Cli, InadmissibleLoadsExitOneWithTheInequality) {
  TempDir t;
  const Outcome r = run({"solve", config("inadmissible.ini"), "--out", t.path.string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("T_in R_in < T_out R_out"), std::string::npos) << r.err;
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  TempDir t;
  ::setenv("WRINKLE_OUTPUT_DIR", t.path.string().c_str(), 1);
  const Outcome r = run({"construct", config("fixture.ini"), "--mode", "cascade", "--thickness", "2^-10"});
  ::unsetenv("WRINKLE_OUTPUT_DIR");
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(slurp(t.path / "construction_cascade.json"));
  EXPECT_EQ(j["base_count"], 32);
}

TEST(Cli, ExportSurfaceWritesObj) {
  TempDir t;
  ASSERT_EQ(run({"export-surface", config("fixture.ini"), "--mode", "naive", "--thickness", "2^-8", "--radial", "8",
                 "--angular", "64", "--obj", "s.obj", "--out", t.path.string()})
                .code,
            cli::kExitOk);
  EXPECT_NE(slurp(t.path / "s.obj").find("\nf "), std::string::npos);
}

TEST(Cli, SweepMatchesGolden) {
  TempDir t;
  const Outcome r = run({"sweep", std::string(WRINKLE_GOLDEN_DIR) + "/sweep_small.ini", "--out", t.path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto got = lines(slurp(t.path / "sweep.csv"));
  const auto want = lines(slurp(fs::path(WRINKLE_GOLDEN_DIR) / "sweep_small.csv"));
  ASSERT_EQ(got.size(), want.size());
  ASSERT_GE(want.size(), 2u);
  EXPECT_EQ(got[0], want[0]);
  EXPECT_EQ(got[1], want[1]);
  for (std::size_t i = 2; i < want.size(); ++i) {
    const auto g = fields(got[i]), w = fields(want[i]);
    ASSERT_EQ(g.size(), w.size());
    EXPECT_EQ(g[0], w[0]);
    for (std::size_t c = 1; c < w.size(); ++c) {
      const double a = std::stod(g[c]), b = std::stod(w[c]);
      EXPECT_LE(std::abs(a - b), 1e-9 * std::abs(b) + 1e-12) << "row " << i << " column " << c;
    }
  }
  const auto fit = nlohmann::json::parse(slurp(t.path / "sweep_fit.json"));
  EXPECT_EQ(fit["schema"], "wrinkle-sweep v1");
  EXPECT_TRUE(fit["failures"].empty());
}
