#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bandwagon;
using namespace bandwagon::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "bandwagon_cli_test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

class SeedEnv : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("BANDWAGON_SEED"); }
  void TearDown() override { unsetenv("BANDWAGON_SEED"); }
};

}  // namespace

TEST(CountList, Forms) {
  EXPECT_EQ(parse_count_list("9,20,100"), (std::vector<std::size_t>{9, 20, 100}));
  EXPECT_EQ(parse_count_list("1..10").size(), 10U);
  EXPECT_EQ(parse_count_list("1..3,7"), (std::vector<std::size_t>{1, 2, 3, 7}));
  EXPECT_THROW(parse_count_list("0"), std::invalid_argument);
  EXPECT_THROW(parse_count_list("3..1"), std::invalid_argument);
  EXPECT_THROW(parse_count_list("a,b"), std::invalid_argument);
  EXPECT_THROW(parse_count_list("1,,2"), std::invalid_argument);
  EXPECT_THROW(parse_count_list("-3"), std::invalid_argument);
}

TEST_F(SeedEnv, SweepParse) {
  const auto r = parse_args({"sweep", "--agents", "9,20,100", "--topics", "1..10", "--trials", "30000", "--std", "10",
                             "--seed", "42", "--out", "results.csv"});
  ASSERT_TRUE(r.command.has_value()) << r.message;
  const auto& cmd = std::get<SweepCommand>(*r.command);
  EXPECT_EQ(cmd.config.agent_counts, (std::vector<std::size_t>{9, 20, 100}));
  EXPECT_EQ(cmd.config.topic_counts.size(), 10U);
  EXPECT_EQ(cmd.config.trials, 30000U);
  EXPECT_EQ(cmd.config.opinion_std, 10.0);
  EXPECT_EQ(cmd.config.seed, 42U);
  EXPECT_EQ(cmd.out, fs::path("results.csv"));
}

TEST_F(SeedEnv, EnvironmentSeedAndFlagPrecedence) {
  setenv("BANDWAGON_SEED", "7", 1);
  auto r = parse_args({"sweep", "--agents", "9", "--topics", "1"});
  ASSERT_TRUE(r.command.has_value()) << r.message;
  EXPECT_EQ(std::get<SweepCommand>(*r.command).config.seed, 7U);
  r = parse_args({"sweep", "--agents", "9", "--topics", "1", "--seed", "8"});
  ASSERT_TRUE(r.command.has_value()) << r.message;
  EXPECT_EQ(std::get<SweepCommand>(*r.command).config.seed, 8U);
  setenv("BANDWAGON_SEED", "x", 1);
  EXPECT_EQ(parse_args({"sweep", "--agents", "9", "--topics", "1"}).exit_code, kExitUsage);
}

TEST_F(SeedEnv, ConfigFileLowestPrecedence) {
  const auto cfg = write_file("cfg.json", R"({"agents": [9, 20], "topics": "1..3", "trials": 50, "seed": 3})");
  auto r = parse_args({"sweep", "--config", cfg.string(), "--trials", "60"});
  ASSERT_TRUE(r.command.has_value()) << r.message;
  const auto& c = std::get<SweepCommand>(*r.command).config;
  EXPECT_EQ(c.agent_counts, (std::vector<std::size_t>{9, 20}));
  EXPECT_EQ(c.topic_counts, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(c.trials, 60U);
  EXPECT_EQ(c.seed, 3U);

  setenv("BANDWAGON_SEED", "11", 1);
  r = parse_args({"sweep", "--config", cfg.string()});
  ASSERT_TRUE(r.command.has_value());
  EXPECT_EQ(std::get<SweepCommand>(*r.command).config.seed, 11U);

  const auto bad = write_file("bad.json", R"({"agents": [9], "topics": [1], "colour": "red"})");
  EXPECT_EQ(parse_args({"sweep", "--config", bad.string()}).exit_code, kExitUsage);
  EXPECT_EQ(parse_args({"sweep", "--config", "/nonexistent/cfg.json"}).exit_code, kExitIo);
}

TEST(CliExitCodes, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"chernoff", "--epsilon", "0.01", "--delta", "0.01", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"chernoff", "--epsilon", "0.01"}).code, kExitUsage);
  EXPECT_EQ(invoke({"chernoff", "--epsilon", "0", "--delta", "0.01"}).code, kExitUsage);
  EXPECT_EQ(invoke({"sweep", "--agents", "0", "--topics", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliExitCodes, MissingFileIsIo) {
  EXPECT_EQ(invoke({"simulate", "--input", "/nonexistent/y0.csv"}).code, kExitIo);
  EXPECT_EQ(invoke({"balance-check", "/nonexistent/x.csv"}).code, kExitIo);
}

TEST(CliExitCodes, InvalidMatrix) {
  const auto zero_row = write_file("zero_row.csv", "1,2\n0,0\n");
  EXPECT_EQ(invoke({"simulate", "--input", zero_row.string()}).code, kExitInvalidMatrix);
  const auto ragged = write_file("ragged.csv", "1,2\n3\n");
  EXPECT_EQ(invoke({"simulate", "--input", ragged.string()}).code, kExitInvalidMatrix);
  const auto asym = write_file("asym.csv", "1,1\n-1,1\n");
  EXPECT_EQ(invoke({"balance-check", asym.string()}).code, kExitInvalidMatrix);
}

TEST(CliCommands, Chernoff) {
  const auto r = invoke({"chernoff", "--epsilon", "0.01", "--delta", "0.01"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "26492\n");
}

TEST(CliCommands, SimulateExampleOne) {
  const auto y0 = write_file("example1.csv", "1.41,-1.21,0.49\n1.42,0.72,1.03\n0.67,1.63,0.73\n");
  const auto r = invoke({"simulate", "--input", y0.string(), "--zero-tol", "1e-2", "--budget", "100", "--trace"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("outcome: VanishedToZero"), std::string::npos);
  EXPECT_NE(r.out.find("appraisals_constant_since: 1"), std::string::npos);
  EXPECT_NE(r.out.find("1,1,-1\n1,1,1\n-1,1,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("t,lyapunov,balanced\n0,4.08"), std::string::npos);
}

TEST(CliCommands, SimulateInlineMatrix) {
  const auto r = invoke({"simulate", "--matrix", "1,0.1;2,-0.1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("outcome: BalancedEquilibrium"), std::string::npos);
  EXPECT_NE(r.out.find("hitting_time: 1"), std::string::npos);
  EXPECT_NE(r.out.find("consensus_row: 1.5,0.0"), std::string::npos);
}

TEST(CliCommands, BalanceCheck) {
  const auto x = write_file("balanced.csv", "1,-1,1\n-1,1,-1\n1,-1,1\n");
  const auto r = invoke({"balance-check", x.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("balanced: yes"), std::string::npos);
  EXPECT_NE(r.out.find("faction: 1,-1,1"), std::string::npos);
  const auto star = write_file("star.csv", "1,1,-1\n1,1,1\n-1,1,1\n");
  const auto s = invoke({"balance-check", "--matrix", star.string()});
  EXPECT_NE(s.out.find("balanced: no"), std::string::npos);
  EXPECT_NE(s.out.find("all_triads_balanced: no"), std::string::npos);
}

TEST_F(SeedEnv, SweepToStdoutAndFile) {
  const auto r = invoke({"sweep", "--agents", "9", "--topics", "1", "--trials", "10", "--seed", "1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "n_agents,n_topics,trials,balanced,vanished,budget_exceeded,p_hat,mean_hitting_time\n"
                   "9,1,10,10,0,0,1.0,1.0\n");
  const auto out = fs::temp_directory_path() / "bandwagon_cli_test" / "sweep.json";
  fs::remove(out);
  const auto f = invoke({"sweep", "--agents", "9", "--topics", "1,2", "--trials", "5", "--out", out.string()});
  EXPECT_EQ(f.code, kExitOk) << f.err;
  EXPECT_TRUE(fs::exists(out));
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "[");
  EXPECT_EQ(invoke({"sweep", "--agents", "9", "--topics", "1", "--trials", "5", "--out", "/nonexistent/d/o.csv"}).code,
            kExitIo);
}
