// Copyright 2026 The sse-memory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sse/game_io.hpp"

namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("sse_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

Invocation run(const std::string& args) {
  fs::path d = scratch();
  std::string cmd = std::string(SSE_CLI_PATH) + " " + args + " >" + (d / "out").string() + " 2>" + (d / "err").string();
  int status = std::system(cmd.c_str());
  Invocation r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(d / "out");
  r.err = slurp(d / "err");
  return r;
}

std::string game(const std::string& name) { return std::string(SSE_GAMES_DIR) + "/" + name + ".game"; }

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

TEST(Cli, SolveDag) {
  Invocation r = run("solve " + game("memory_dag"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("leader 2 (2.000000)"), std::string::npos);
  EXPECT_NE(r.out.find("follower 5 (5.000000)"), std::string::npos);
  EXPECT_NE(r.out.find("|M| = 4"), std::string::npos);
  Invocation t = run("solve " + game("even_mix"));
  EXPECT_NE(t.out.find("leader 1 (1.000000)\nfollower 1 (1.000000)"), std::string::npos);
}

TEST(Cli, SolveJsonIsDeterministic) {
  Invocation a = run("solve --json --emit-sets " + game("memory_dag"));
  Invocation b = run("solve --json --emit-sets " + game("memory_dag"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["value"]["leader"], "2");
  EXPECT_EQ(j["memory_states"], 4);
  size_t points = 0;
  for (const auto& piece : j["sets"]["v0"]) points += piece.size();
  EXPECT_EQ(points, 5u);
}

TEST(Cli, SolveCyclic) {
  Invocation r = run("solve --json " + game("triangle_cycle"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["shape"], "cyclic");
  EXPECT_EQ(j["value"]["leader"], "3/2");
  EXPECT_EQ(j["value"]["follower"], "11/2");
  Invocation f4 = run("solve " + game("negative_cycle"));
  EXPECT_EQ(f4.code, 4);
  Invocation u = run("solve --force-unfold " + game("revisit_cycle"));
  EXPECT_EQ(u.code, 0);
  EXPECT_NE(u.err.find("v2#2"), std::string::npos);
}

TEST(Cli, ChanceUnderSolveIsCapabilityError) {
  std::string g = write_temp("coin.game",
                             "root c\nnode c chance\nnode a leaf utils 1 1\nnode b leaf utils 2 2\n"
                             "edge c a 1/2\nedge c b 1/2\n");
  Invocation r = run("solve " + g);
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("use approx-chance"), std::string::npos);
  Invocation a = run("approx-chance --epsilon 1/2 --json " + g);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(nlohmann::json::parse(a.out)["value"]["leader"], "3/2");
}

TEST(Cli, ValidationErrors) {
  EXPECT_EQ(run("solve /nonexistent/game").code, 2);
  EXPECT_EQ(run("solve " + write_temp("bad.game", "root a\nnode a leader\nedge a b\n")).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("approx-chance --epsilon 0 " + game("memory_dag")).code, 2);
  EXPECT_EQ(run("gen --family spiral").code, 2);
}

TEST(Cli, VerifyRoundTrip) {
  std::string p = (scratch() / "p3.json").string();
  ASSERT_EQ(run("solve --profile " + p + " " + game("memory_dag")).code, 0);
  Invocation ok = run("verify --game " + game("memory_dag") + " --profile " + p + " --claimed 2,5");
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_TRUE(nlohmann::json::parse(ok.out)["ok"].get<bool>());
  Invocation bad = run("verify --game " + game("memory_dag") + " --profile " + p + " --claimed 3,5");
  EXPECT_EQ(bad.code, 3);
  EXPECT_FALSE(nlohmann::json::parse(bad.out)["ok"].get<bool>());
  Invocation wrong = run("verify --game " + game("even_mix") + " --profile " + p);
  EXPECT_EQ(wrong.code, 2);
}

TEST(Cli, VerifyRejectsExploitableProfile) {
  // The leader plays the punishing leaf outright, so the follower opts out.
  std::string p = write_temp("p1.json", R"({"schema": "sse-profile/1", "initial": 0, "red": 1,
    "states": [{"id": 0, "label": "m0", "red": false, "phase": 0, "suggestions": [["v0", "v2"]]},
               {"id": 1, "label": "R", "red": true, "phase": 0, "suggestions": []}],
    "transitions": [], "leader": [{"state": 0, "node": "v2", "dist": [["l2", "1"]]}],
    "follower": [{"state": 0, "node": "v0", "move": "v2"}],
    "defaults": {"leader": [["v2", "l2"]], "follower": [["v0", "l3"]]}})");
  Invocation r = run("verify --game " + game("even_mix") + " --profile " + p);
  EXPECT_EQ(r.code, 3) << r.out << r.err;
}

TEST(Cli, MaxminOutputs) {
  Invocation t = run("maxmin " + game("memory_dag"));
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("punish"), std::string::npos);
  auto j = nlohmann::json::parse(run("maxmin --json " + game("memory_dag")).out);
  EXPECT_EQ(j["nodes"][0]["node"], "v0");
  EXPECT_EQ(j["nodes"][0]["mu2"], "5");
}

TEST(Cli, OracleAndApprox) {
  auto o = nlohmann::json::parse(run("oracle --json --resolution 4 " + game("memory_dag")).out);
  EXPECT_EQ(o["value"]["leader"], "2");
  auto m = nlohmann::json::parse(run("oracle --json --memoryless --resolution 1 " + game("memory_dag")).out);
  EXPECT_EQ(m["value"]["leader"], "1");
  Invocation a = run("approx-chance --epsilon 1/4 --emit-grid --json " + game("memory_dag"));
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["bound"], "2");
  EXPECT_TRUE(j["grid"]["rows"].contains("v0"));
  EXPECT_EQ(run("approx-chance --grid 8 " + game("memory_dag")).code, 0);
}

TEST(Cli, GenIsDeterministicAndValid) {
  Invocation a = run("gen --family tree -n 7 --seed 42");
  Invocation b = run("gen --family tree -n 7 --seed 42");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("gen --family tree -n 7 --seed 43").out);
  Invocation c = run("gen --family cyclic -n 20 --seed 7");
  sse::GameGraph g = sse::parse_game(c.out).game;
  EXPECT_EQ(g.shape(), sse::Shape::Cyclic);
  EXPECT_TRUE(sse::validate_nonnegative(g));
  for (const char* f : {"dag", "layered", "chance"}) {
    Invocation r = run(std::string("gen --family ") + f + " -n 30 --seed 5");
    ASSERT_EQ(r.code, 0) << f;
    EXPECT_NO_THROW(sse::parse_game(r.out)) << f;
  }
}

TEST(Cli, BenchCsv) {
  Invocation r = run("bench --family dag --sizes 100,200,400");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("n,pass", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",1,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 3);
  Invocation e = run("bench --family dag");
  EXPECT_EQ(e.out.find('\n'), e.out.size() - 1);
}

TEST(Cli, ExportDot) {
  Invocation r = run("export-dot " + game("memory_dag"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

}  // namespace
