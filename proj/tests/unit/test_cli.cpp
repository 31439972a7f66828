#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frobdisc/cli.hpp"

using frobdisc::run_cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "frobdisc");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, Help) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("census"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, frobdisc::kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, frobdisc::kExitUsage);
  EXPECT_EQ(run({"census", "--x", "100", "--h", "4"}).code, frobdisc::kExitUsage);
  EXPECT_EQ(run({"verify", "everything"}).code, frobdisc::kExitUsage);
  EXPECT_EQ(run({"sum-st", "--T", "10", "--R", "0"}).code, frobdisc::kExitUsage);
}

TEST(Cli, Gl2P1) {
  const CliRun r = run({"gl2", "p1", "--ell", "3"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["matching"], 3294);
  EXPECT_EQ(j["order"], 3888);
  EXPECT_EQ(j["density"], "61/72");
}

TEST(Cli, ConstantJson) {
  const CliRun r = run({"constant", "--r", "2", "--h", "3", "--json", "--prime-cut", "1000", "--max-factors", "0"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["prime_cut"], 1000);
  EXPECT_EQ(j["factors"].size(), 167u);
  EXPECT_EQ(j["factors"][1]["ell"], 5);
  EXPECT_EQ(j["factors"][1]["num"], "571");
  EXPECT_GT(j["value"].get<double>(), 0.0);
  EXPECT_GT(j["tail_bound"].get<double>(), 0.0);
}

TEST(Cli, CensusNonSquarefreeWarns) {
  const CliRun r = run({"census", "--x", "100", "--r", "0", "--h", "9", "--threads", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("(r,h) not square-free"), std::string::npos);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("p,", 0) == 0) continue;
    ++rows;
    EXPECT_NE(line.find(",0,0,0,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 23);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run({"verify", "deuring", "--pmax", "60"}).code, 0);
  EXPECT_EQ(run({"verify", "ct", "--nmax", "200", "--tmax", "10"}).code, 0);
  EXPECT_EQ(run({"verify", "constant-identity", "--prime-cut", "1000"}).code, 0);
  EXPECT_EQ(run({"verify", "st", "--tmax", "7", "--umax", "21", "--rmax", "3"}).code, 0);
  const CliRun g = run({"verify", "gl2", "--ell-max", "5"});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("PASS"), std::string::npos);
}

TEST(Cli, SumSt) {
  const CliRun r = run({"sum-st", "--T", "100", "--R", "3,5", "--prime-cut", "1000"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "R,U,S_over_T,predicted,deviation");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("3,90,", 0), 0u) << line;
}

TEST(Cli, BoxDemo) {
  const CliRun r = run({"box-demo", "--A", "5", "--B", "5", "--x", "50"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["curves"], 118);
}

TEST(Cli, ReportRequiresCompleteCache) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "frobdisc_cli_test";
  fs::create_directories(dir);
  const fs::path cache = dir / "c.ndjson";
  fs::remove(cache);
  ASSERT_EQ(run({"census", "--x", "200", "--cache", cache.string(), "--report", (dir / "a.csv").string()}).code, 0);
  const CliRun full = run({"report", "--cache", cache.string()});
  ASSERT_EQ(full.code, 0);
  {
    std::ofstream out(cache, std::ios::trunc);
    out << R"({"format":"frobdisc-census","version":1,"x":200,"r":0,"h":1})" << "\n" << R"({"p":5,"pib":8,"method":"direct"})" << "\n";
  }
  EXPECT_EQ(run({"report", "--cache", cache.string()}).code, frobdisc::kExitResource);
  EXPECT_EQ(run({"report", "--cache", (dir / "missing.ndjson").string()}).code, frobdisc::kExitResource);
}
