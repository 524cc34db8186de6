#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "greedymine/cli.hpp"

using namespace greedymine;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json parse_json(const std::string& text) {
  EXPECT_TRUE(nlohmann::json::accept(text)) << text;
  return nlohmann::json::parse(text);
}

}  // namespace

TEST(CliTest, ThresholdExample) {
  const auto r = invoke({"threshold", "--gamma", "1", "--tol", "1e-6"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("alpha* 0.180"), std::string::npos) << r.out;
}

TEST(CliTest, AnalyticUndefinedRer) {
  const auto r = invoke({"analytic", "--alpha", "0", "--gamma", "0.5"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("undefined"), std::string::npos);
  const auto j = invoke({"--format", "json", "analytic", "--alpha", "0", "--gamma", "0.5"});
  const auto doc = parse_json(j.out);
  EXPECT_TRUE(doc["rer"].is_null());
  EXPECT_EQ(doc["rer_status"], "undefined");
}

TEST(CliTest, SimulateIsByteIdentical) {
  const std::vector<std::string> args{"simulate", "--alpha", "0.3", "--gamma", "0.5", "--trials", "1000", "--seed", "42"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, SimulateThreadCapDoesNotChangeOutput) {
  const std::vector<std::string> args{"--format", "json", "simulate", "--alpha", "0.3", "--gamma", "0.5",
                                      "--trials", "30000", "--seed", "42"};
  ::setenv(cli::kThreadsEnv, "1", 1);
  const auto a = invoke(args);
  ::setenv(cli::kThreadsEnv, "4", 1);
  const auto b = invoke(args);
  ::setenv(cli::kThreadsEnv, "zero", 1);
  const auto bad = invoke(args);
  ::unsetenv(cli::kThreadsEnv);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find(cli::kThreadsEnv), std::string::npos);
}

TEST(CliTest, SeedRequired) {
  const auto r = invoke({"simulate", "--alpha", "0.3", "--gamma", "0.5", "--trials", "10"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("--seed"), std::string::npos) << r.err;
  const auto nd = invoke({"simulate", "--alpha", "0.3", "--gamma", "0.5", "--trials", "10", "--nondeterministic"});
  EXPECT_EQ(nd.status, 0);
  const auto both = invoke({"simulate", "--alpha", "0.3", "--gamma", "0.5", "--seed", "1", "--nondeterministic"});
  EXPECT_EQ(both.status, 2);
  EXPECT_EQ(invoke({"sweep", "--mode", "mc", "--alphas", "0.2"}).status, 2);
}

TEST(CliTest, ValidationExitsTwo) {
  const std::vector<std::vector<std::string>> cases{
      {"analytic", "--alpha", "1.5", "--gamma", "0.5"},
      {"analytic", "--alpha", "0.2", "--gamma", "-0.1"},
      {"analytic", "--alpha", "0.2", "--gamma", "0.1", "--r-leader", "2"},
      {"simulate", "--alpha", "0.2", "--gamma", "0.1", "--trials", "0", "--seed", "1"},
      {"simulate", "--alpha", "0.2", "--gamma", "0.1", "--trials", "-3", "--seed", "1"},
      {"oracle", "--alpha", "0.2", "--gamma", "0.1", "--depth", "0"},
      {"threshold", "--gamma", "1", "--tol", "0"},
      {"threshold", "--gamma", "1", "--tol", "-1"},
      {"bounds", "--alpha", "1"},
      {"bounds"},
      {"frobnicate"},
      {"analytic", "--alpha", "0.2", "--gamma", "0.1", "--bogus"},
      {"--format", "xml", "table1"},
      {"sweep", "--alphas", "0.1,1.4"},
      {},
  };
  for (const auto& args : cases) {
    const auto r = invoke(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.status, 2) << joined << "\n" << r.err;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(CliTest, ErrorNamesFlag) {
  EXPECT_NE(invoke({"analytic", "--alpha", "1.5", "--gamma", "0.5"}).err.find("--alpha"), std::string::npos);
  EXPECT_NE(invoke({"bounds", "--alpha", "1"}).err.find("--alpha"), std::string::npos);
  EXPECT_NE(invoke({"threshold", "--gamma", "1", "--tol", "0"}).err.find("--tol"), std::string::npos);
}

TEST(CliTest, JsonForEverySubcommand) {
  const std::vector<std::vector<std::string>> cases{
      {"bounds", "--alpha", "0.25"},
      {"analytic", "--alpha", "0.3", "--gamma", "0.5"},
      {"oracle", "--alpha", "0.3", "--gamma", "0.5"},
      {"simulate", "--alpha", "0.3", "--gamma", "0.5", "--trials", "1000", "--seed", "1"},
      {"sweep", "--alphas", "0.1,0.2", "--gammas", "0,1"},
      {"sweep", "--alphas", "0,0.2", "--gammas", "1", "--heatmap"},
      {"sweep", "--alphas", "0.2", "--gammas", "1", "--mode", "all", "--trials", "1000", "--seed", "3"},
      {"threshold"},
      {"table1"},
  };
  for (auto args : cases) {
    args.insert(args.begin(), {"--format", "json"});
    const auto r = invoke(args);
    EXPECT_TRUE(r.status == 0 || (args[2] == "table1" && r.status == 1)) << args[2] << ": " << r.err;
    EXPECT_TRUE(nlohmann::json::accept(r.out)) << args[2] << "\n" << r.out;
  }
}

TEST(CliTest, CsvForEverySubcommand) {
  const auto r = invoke({"--format", "csv", "sweep", "--alphas", "0,0.1", "--gammas", "0.5"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("alpha,gamma,revenue_honest", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("undefined"), std::string::npos);
}

TEST(CliTest, DefaultsEchoed) {
  auto doc = parse_json(invoke({"--format", "json", "analytic", "--alpha", "0.3", "--gamma", "0.5"}).out);
  EXPECT_EQ(doc["parameters"]["r_leader"], 0.4);
  doc = parse_json(invoke({"--format", "json", "oracle", "--alpha", "0.3", "--gamma", "0.5"}).out);
  EXPECT_EQ(doc["parameters"]["depth"], 64);
  doc = parse_json(invoke({"--format", "json", "simulate", "--alpha", "0.3", "--gamma", "0.5", "--seed", "5"}).out);
  EXPECT_EQ(doc["parameters"]["trials"], 1000000);
  EXPECT_EQ(doc["parameters"]["giveup_depth"], 64);
  EXPECT_EQ(doc["parameters"]["r_leader"], 0.4);
  EXPECT_EQ(doc["seed_echo"], 5);
  doc = parse_json(invoke({"--format", "json", "threshold", "--gamma", "1"}).out);
  EXPECT_EQ(doc["parameters"]["tol"], 1e-6);
  const auto help = invoke({"simulate", "--help"});
  EXPECT_EQ(help.status, 0);
}

TEST(CliTest, Table1ExitsOneWithNamedCells) {
  const auto r = invoke({"table1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("(gamma=0.2, alpha=0.2)"), std::string::npos);
  EXPECT_NE(r.out.find("(gamma=0.0, alpha=0.3)"), std::string::npos);
  EXPECT_NE(r.out.find("28 of 30"), std::string::npos);
}

TEST(CliTest, OutWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "greedymine_cli_out.json";
  const auto r = invoke({"--format", "json", "--out", path.string(), "threshold", "--gammas", "0,1"});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc.size(), 2u);
  std::filesystem::remove(path);

  const auto bad = invoke({"--out", "/nonexistent-dir/x.csv", "threshold", "--gamma", "1"});
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("/nonexistent-dir/x.csv"), std::string::npos);
}
