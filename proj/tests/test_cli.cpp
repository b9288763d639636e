#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "common.hpp"
#include "fifo/frontend/cli.hpp"

using namespace fifo;
using fifo::testing::sample_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.ends_with(".fifo") || a.ends_with(".trace") || a.ends_with(".json"))
      if (a.find('/') == std::string::npos) a = sample_path(a);
  std::ostringstream out, err;
  int code = fifo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json parsed(const Result& r) {
  EXPECT_TRUE(json::accept(r.out)) << r.out;
  return json::parse(r.out);
}

TEST(Cli, GreedyCsd) {
  auto r = cli({"check", "greedy", "csd.fifo"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Greedy\n");
}

TEST(Cli, GreedyCrossSendPrintsWitness) {
  auto r = cli({"check", "greedy", "xchg.fifo"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness word: q!m2 p!?m1 q?m2"), std::string::npos);
  EXPECT_NE(r.out.find("conflict cycle:"), std::string::npos);
  auto j = parsed(cli({"check", "greedy", "xchg.fifo", "--json", "--adjacency", "process"}));
  EXPECT_EQ(j["status"], "NotGreedy");
}

TEST(Cli, MissingFileIsUsageError) {
  auto r = cli({"check", "greedy", "/nonexistent/nosuch.fifo"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST(Cli, BadArgumentsAreUsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"check"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"check", "greedy", "csd.fifo", "--adjacency", "weird"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "teleport"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "reach-control"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "reach-control", "9,9,9"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  auto r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("check"), std::string::npos);
}

TEST(Cli, ParseErrorIsUsageError) {
  auto path = std::filesystem::temp_directory_path() / "fifo_cli_bad.fifo";
  std::ofstream(path) << "system broken\nprocess p {\n  initial\n}\n";
  auto r = cli({"check", "greedy", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("4:1"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, InvalidSystemIsUsageError) {
  auto path = std::filesystem::temp_directory_path() / "fifo_cli_invalid.fifo";
  std::ofstream(path) << "system shared\nprocess p { initial 0 0 -> 1 : b!m }\nprocess q { initial 0 0 -> 1 : b!m }\n";
  auto r = cli({"check", "greedy", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("action-sets-not-disjoint"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, SafetyProperties) {
  auto r = cli({"check", "safety", "csd.fifo", "--property", "reach-control", "1,1,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("witness actions: c:s!req s:s?req"), std::string::npos);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "progress"}).code, 0);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "unspecified-reception"}).code, 0);
  EXPECT_EQ(cli({"check", "safety", "stuck.fifo", "--property", "progress"}).code, 1);
  auto j = parsed(cli({"check", "safety", "csd.fifo", "--property", "reach-config", "csd_after_req.json", "--json"}));
  EXPECT_EQ(j["status"], "Unsafe");
  EXPECT_EQ(j["configuration"]["control"], json({"1", "1", "0"}));
  j = parsed(cli({"check", "safety", "csd.fifo", "--property", "nfa", "csd_two_logs.json", "--json"}));
  EXPECT_EQ(j["status"], "Unsafe");
  EXPECT_EQ(j["configuration"]["buffers"]["d"].size(), 2u);
}

TEST(Cli, SafetyArgumentMistakes) {
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "progress", "extra"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "csd.fifo", "--property", "nfa", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(cli({"check", "safety", "abc.fifo", "--property", "unspecified-reception"}).code, 3);
}

TEST(Cli, PreconditionFailure) {
  auto r = cli({"check", "safety", "xchg.fifo", "--property", "progress"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("not greedy"), std::string::npos);
  EXPECT_EQ(cli({"check", "bounded", "xchg.fifo"}).code, 3);
  EXPECT_EQ(cli({"check", "half-duplex", "abc.fifo"}).code, 3);
}

TEST(Cli, Boundedness) {
  auto r = cli({"check", "bounded", "ping.fifo"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Bounded k=1"), std::string::npos);
  auto j = parsed(cli({"check", "bounded", "abc.fifo", "--json"}));
  EXPECT_EQ(j["status"], "Unbounded");
  EXPECT_FALSE(j["cycle"].empty());
}

TEST(Cli, HalfDuplex) {
  EXPECT_EQ(cli({"check", "half-duplex", "xchg.fifo"}).code, 1);
  EXPECT_EQ(cli({"check", "half-duplex", "pingpong.fifo"}).code, 0);
  auto r = cli({"check", "half-duplex", "csd.fifo", "--depth", "8"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("UnknownAtBound"), std::string::npos);
  auto j = parsed(cli({"check", "half-duplex", "msc.fifo", "--json"}));
  EXPECT_EQ(j["status"], "NotHalfDuplex");
  j = parsed(cli({"check", "half-duplex", "msc.fifo", "--orphans", "--json"}));
  EXPECT_EQ(j["status"], "Orphan");
  EXPECT_EQ(j["buffer"], "q");
  EXPECT_EQ(cli({"check", "half-duplex", "pingpong.fifo", "--orphans"}).code, 0);
}

TEST(Cli, Simulate) {
  auto r = cli({"simulate", "csd.fifo", "--trace", "csd_run.trace"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("13: d:d?log_s -> (1,0,0) s=[req] c=[] d=[]"), std::string::npos);
  auto j = parsed(cli({"simulate", "csd.fifo", "--trace", "csd_run.trace", "--json"}));
  EXPECT_EQ(j["status"], "Ok");
  EXPECT_EQ(j["steps"].size(), 13u);
}

TEST(Cli, SimulateReportsFailingStep) {
  auto path = std::filesystem::temp_directory_path() / "fifo_cli_bad.trace";
  std::ofstream(path) << "c:s!req c:c?res\n";
  auto r = cli({"simulate", sample_path("csd.fifo"), "--trace", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("step 2 (c:c?res) fails: empty buffer"), std::string::npos) << r.out;
  auto j = parsed(cli({"simulate", sample_path("csd.fifo"), "--trace", path.string(), "--json"}));
  EXPECT_EQ(j["index"], 1);
  std::filesystem::remove(path);
}

TEST(Cli, Graph) {
  auto r = cli({"graph", "csd.fifo", "--trace", "csd_run.trace", "--kind", "conflict", "--reduce"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph conflict_graph {", 0), 0u);
  EXPECT_NE(r.out.find("req(2)"), std::string::npos);
  r = cli({"graph", "csd.fifo", "--trace", "csd_run.trace"});
  EXPECT_EQ(r.out.rfind("digraph action_graph {", 0), 0u);
  EXPECT_EQ(cli({"graph", "csd.fifo", "--trace", "csd_run.trace", "--kind", "other"}).code, 2);
}

TEST(Cli, Oracle) {
  auto r = cli({"oracle", "xchg.fifo", "--depth", "4", "--buffer-bound", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, fifo::testing::read_text(std::string(FIFO_GOLDEN_DIR) + "/xchg_depth4.txt") + "# nodes 13\n");
  EXPECT_EQ(cli({"oracle", "xchg.fifo", "--depth", "4", "--buffer-bound", "4", "--report", "greedy"}).code, 1);
  auto j = parsed(cli({"oracle", "ping.fifo", "--depth", "4", "--buffer-bound", "4", "--report", "occupancy", "--json"}));
  EXPECT_EQ(j["per_buffer"]["q"], 1);
  j = parsed(cli({"oracle", "xchg.fifo", "--depth", "6", "--buffer-bound", "4", "--report", "reachable", "--json"}));
  EXPECT_EQ(j["configurations"].size(), 7u);
  EXPECT_EQ(cli({"oracle", "xchg.fifo", "--depth", "4"}).code, 2);
}

TEST(Cli, AllJsonOutputsParse) {
  const std::vector<std::vector<std::string>> commands = {
      {"check", "greedy", "csd.fifo", "--json"},
      {"check", "greedy", "csd.fifo", "--json", "--parallel"},
      {"check", "safety", "csd.fifo", "--property", "progress", "--json"},
      {"check", "bounded", "csd.fifo", "--json"},
      {"check", "half-duplex", "xchg.fifo", "--json"},
      {"check", "half-duplex", "csd.fifo", "--orphans", "--depth", "6", "--json"},
      {"simulate", "csd.fifo", "--trace", "csd_run.trace", "--json"},
      {"oracle", "csd.fifo", "--depth", "3", "--buffer-bound", "2", "--json"},
      {"oracle", "csd.fifo", "--depth", "6", "--buffer-bound", "2", "--report", "greedy", "--json"},
  };
  for (const auto& c : commands) {
    auto r = cli(c);
    EXPECT_TRUE(json::accept(r.out)) << c[0] << " " << c[1] << "\n" << r.out;
  }
}

}  // namespace
