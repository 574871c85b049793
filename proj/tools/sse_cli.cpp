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

// sse_cli: solve, verify and inspect games from the command line.
//
// Exit codes: 0 success, 2 validation error, 3 verification failure,
// 4 capability error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sse/chance_approx.hpp"
#include "sse/cyclic.hpp"
#include "sse/dot.hpp"
#include "sse/downward.hpp"
#include "sse/game_io.hpp"
#include "sse/generate.hpp"
#include "sse/oracle.hpp"
#include "sse/profile_io.hpp"
#include "sse/verifier.hpp"

namespace {

using namespace sse;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kVerification = 3;
constexpr int kCapability = 4;
constexpr uint64_t kDefaultSeed = 20260101;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Config {
  std::string input;
  std::string profile_path;
  std::string game_path;
  std::string claimed;
  std::string epsilon;
  std::string family = "dag";
  std::string output;
  std::vector<int> sizes;
  int grid = 0;
  int resolution = 12;
  int size = 10;
  size_t unroll_cap = 1u << 20;
  uint64_t seed = kDefaultSeed;
  bool json = false;
  bool emit_sets = false;
  bool emit_grid = false;
  bool force_unfold = false;
  bool memoryless = false;
};

GameGraph load(const std::string& path) {
  ParsedGame p = load_game(path);
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  return std::move(p.game);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw GameError(GameError::Kind::Syntax, "cannot write '" + path + "'");
  f << text;
}

std::string show(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }

void print_profile(const GameGraph& g, const StrategyWithMemory& s) {
  auto name = [&](NodeId v) { return g.node(v).name; };
  const auto& mm = s.machine;
  std::cout << "states:\n";
  for (size_t i = 0; i < mm.states.size(); ++i) {
    const MemoryState& st = mm.states[i];
    std::cout << "  [" << i << "] " << st.label << (st.is_red ? " (red)" : "")
              << (static_cast<StateId>(i) == mm.initial ? " (initial)" : "");
    for (const auto& [v, w] : st.suggestions) std::cout << " " << name(v) << "->" << name(w);
    std::cout << "\n";
  }
  if (!mm.transitions.empty()) std::cout << "transitions:\n";
  for (const auto& [k, next] : mm.transitions)
    std::cout << "  [" << std::get<0>(k) << "] " << name(std::get<1>(k)) << "->" << name(std::get<2>(k)) << " => ["
              << next << "]\n";
  if (!s.leader.empty()) std::cout << "leader:\n";
  for (const auto& [k, d] : s.leader) {
    std::cout << "  [" << k.first << "] " << name(k.second) << ":";
    for (const auto& [w, p] : d) std::cout << " " << name(w) << "=" << to_string(p);
    std::cout << "\n";
  }
  if (!s.follower.empty()) std::cout << "follower:\n";
  for (const auto& [k, w] : s.follower) std::cout << "  [" << k.first << "] " << name(k.second) << " -> " << name(w) << "\n";
}

void report(const Config& c, const GameGraph& g, const Outcome& value, const StrategyWithMemory& s, Json extra) {
  if (!c.profile_path.empty()) write_text(c.profile_path, profile_to_json(g, s).dump(2) + "\n");
  if (c.json) {
    Json j{{"schema", "sse-report/1"}, {"shape", std::string(shape_name(g.shape()))}, {"value", outcome_json(value)},
           {"memory_states", s.machine.size()}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["profile"] = profile_to_json(g, s);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "leader " << show(value.u1) << "\n"
            << "follower " << show(value.u2) << "\n"
            << "|M| = " << s.machine.size() << "\n";
  print_profile(g, s);
  for (auto& [k, v] : extra.items()) std::cout << k << ": " << v.dump(2) << "\n";
}

int cmd_solve(const Config& c) {
  GameGraph g = load(c.input);
  if (g.has_chance())
    throw GameError(GameError::Kind::Capability, "game has chance nodes; use approx-chance");
  auto t0 = Clock::now();
  Json extra = Json::object();
  if (g.shape() == Shape::Cyclic || c.force_unfold) {
    if (c.force_unfold) {
      UnfoldedGame u = unfold_twice(g);
      std::cerr << export_graph_description(u.game);
    }
    if (g.shape() != Shape::Cyclic) {
      SynthesisResult r = solve_dag(g);
      report(c, g, r.value, r.profile, extra);
      std::cerr << "time " << seconds_since(t0) << " s\n";
      return kOk;
    }
    CyclicSolution sol = solve_cyclic(g);
    if (c.emit_sets) extra["unfolded_sets"] = sets_to_json(sol.unfolded.game, upward_pass(sol.unfolded.game).sets);
    report(c, g, sol.value, sol.profile, extra);
  } else {
    UpwardResult up = upward_pass(g);
    SynthesisResult r = synthesize(g, up);
    if (c.emit_sets) extra["sets"] = sets_to_json(g, up.sets);
    report(c, g, r.value, r.profile, extra);
  }
  std::cerr << "time " << seconds_since(t0) << " s\n";
  return kOk;
}

std::optional<Outcome> parse_claim(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return std::nullopt;
  auto a = parse_rational(s.substr(0, comma)), b = parse_rational(s.substr(comma + 1));
  if (!a || !b) return std::nullopt;
  return Outcome{*a, *b};
}

int cmd_verify(const Config& c) {
  GameGraph g = load(c.game_path);
  std::ifstream f(c.profile_path);
  if (!f) throw GameError(GameError::Kind::Syntax, "cannot open '" + c.profile_path + "'");
  Json pj;
  try {
    pj = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw GameError(GameError::Kind::Syntax, std::string("profile is not valid JSON: ") + e.what());
  }
  StrategyWithMemory s = profile_from_json(g, pj);
  std::optional<Outcome> claim;
  if (!c.claimed.empty()) {
    claim = parse_claim(c.claimed);
    if (!claim) throw GameError(GameError::Kind::Syntax, "--claimed expects u1,u2");
  }
  Json out{{"schema", "sse-verify/1"}};
  try {
    CertificateReport r = check_certificate(g, s, claim);
    out["ok"] = r.ok;
    out["evaluated"] = outcome_json(r.evaluated);
    out["best_response"] = outcome_json(r.best_response);
    out["reason"] = r.reason;
  } catch (const NonTerminatingProfile& e) {
    out["ok"] = false;
    out["reason"] = e.what();
  }
  std::cout << out.dump(2) << "\n";
  return out["ok"].get<bool>() ? kOk : kVerification;
}

int cmd_maxmin(const Config& c) {
  GameGraph g = load(c.input);
  MaxminTable t = compute_maxmin(g);
  if (c.json) {
    Json nodes = Json::array();
    for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
      Json row{{"node", g.node(v).name}, {"owner", std::string(owner_name(g.owner(v)))}, {"mu2", to_string(t.mu2[static_cast<size_t>(v)])}};
      if (t.punish[static_cast<size_t>(v)] != kNoNode) row["punish"] = g.node(t.punish[static_cast<size_t>(v)]).name;
      nodes.push_back(row);
    }
    std::cout << Json{{"schema", "sse-maxmin/1"}, {"nodes", nodes}}.dump(2) << "\n";
    return kOk;
  }
  size_t width = 4;
  for (const auto& n : g.nodes()) width = std::max(width, n.name.size());
  std::cout << std::left << std::setw(static_cast<int>(width)) << "node" << "  " << std::setw(8) << "owner" << "  "
            << std::setw(12) << "mu2" << "  punish\n";
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    NodeId p = t.punish[static_cast<size_t>(v)];
    std::cout << std::setw(static_cast<int>(width)) << g.node(v).name << "  " << std::setw(8) << owner_name(g.owner(v))
              << "  " << std::setw(12) << to_string(t.mu2[static_cast<size_t>(v)]) << "  "
              << (p == kNoNode ? "-" : g.node(p).name) << "\n";
  }
  return kOk;
}

int cmd_approx(const Config& c) {
  GameGraph g = load(c.input);
  if (g.shape() == Shape::Cyclic)
    throw GameError(GameError::Kind::Capability, "approx-chance needs an acyclic game");
  Rational eps;
  if (c.grid > 0) {
    eps = epsilon_for_cells(g, c.grid);
  } else {
    auto e = parse_rational(c.epsilon.empty() ? "1" : c.epsilon);
    if (!e || *e <= 0) throw GameError(GameError::Kind::Syntax, "--epsilon must be a positive rational");
    eps = *e;
  }
  auto t0 = Clock::now();
  ApproxResult r = approx_solve(g, eps);
  Outcome value = evaluate(g, r.profile);
  Json extra{{"epsilon", to_string(r.grid.step)}, {"bound", to_string(r.bound)}, {"follower_at_bound", to_string(r.follower_value)}};
  if (c.emit_grid) extra["grid"] = grid_to_json(r.binary.game, r.grid);
  report(c, g, value, r.profile, extra);
  std::cerr << "time " << seconds_since(t0) << " s\n";
  return kOk;
}

int cmd_oracle(const Config& c) {
  GameGraph g = load(c.input);
  if (c.resolution < 1) throw GameError(GameError::Kind::Syntax, "--resolution must be positive");
  if (g.shape() == Shape::Cyclic) throw GameError(GameError::Kind::Capability, "oracle needs an acyclic game");
  GameGraph t = unroll_to_tree(g, c.unroll_cap);
  Outcome o = c.memoryless ? best_memoryless(g, c.resolution) : brute_force_sse(t, c.resolution);
  if (c.json) {
    std::cout << Json{{"schema", "sse-oracle/1"}, {"resolution", c.resolution}, {"memoryless", c.memoryless}, {"value", outcome_json(o)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "leader " << show(o.u1) << "\nfollower " << show(o.u2) << "\n";
  }
  return kOk;
}

int cmd_gen(const Config& c) {
  auto f = parse_family(c.family);
  if (!f) throw GameError(GameError::Kind::Syntax, "unknown family '" + c.family + "'");
  if (c.size < 1) throw GameError(GameError::Kind::Syntax, "--size must be at least 1");
  std::string text = write_game(generate(*f, c.size, c.seed));
  if (c.output.empty())
    std::cout << text;
  else
    write_text(c.output, text);
  return kOk;
}

int cmd_bench(const Config& c) {
  auto f = parse_family(c.family);
  if (!f) throw GameError(GameError::Kind::Syntax, "unknown family '" + c.family + "'");
  std::cout << "n,pass,upward_s,downward_s,verify_s,wall_s\n";
  for (int n : c.sizes) {
    GameGraph g = generate(*f, n, c.seed);
    auto t0 = Clock::now();
    Outcome value;
    StrategyWithMemory s;
    double up_s = 0, down_s = 0;
    if (g.shape() == Shape::Cyclic) {
      CyclicSolution sol = solve_cyclic(g);
      up_s = seconds_since(t0);
      value = sol.value;
      s = std::move(sol.profile);
    } else if (g.has_chance()) {
      ApproxResult r = approx_solve(g, epsilon_for_cells(g, 8));
      up_s = seconds_since(t0);
      value = evaluate(g, r.profile);
      s = std::move(r.profile);
    } else {
      UpwardResult up = upward_pass(g);
      up_s = seconds_since(t0);
      auto t1 = Clock::now();
      SynthesisResult r = synthesize(g, up);
      down_s = seconds_since(t1);
      value = r.value;
      s = std::move(r.profile);
    }
    auto t2 = Clock::now();
    bool pass = check_certificate(g, s, value).ok;
    double ver_s = seconds_since(t2);
    std::cout << n << "," << (pass ? 1 : 0) << "," << up_s << "," << down_s << "," << ver_s << "," << seconds_since(t0)
              << "\n";
  }
  return kOk;
}

int cmd_dot(const Config& c) {
  GameGraph g = load(c.input);
  if (c.force_unfold) {
    std::cout << export_graph_description(unfold_twice(g).game);
    return kOk;
  }
  if (c.profile_path.empty()) {
    std::cout << export_graph_description(g);
    return kOk;
  }
  std::ifstream f(c.profile_path);
  if (!f) throw GameError(GameError::Kind::Syntax, "cannot open '" + c.profile_path + "'");
  StrategyWithMemory s = profile_from_json(g, Json::parse(f, nullptr, false));
  std::cout << export_graph_description(g, &s);
  return kOk;
}

int exit_code(const GameError& e) {
  switch (e.kind()) {
    case GameError::Kind::Capability:
    case GameError::Kind::NegativePayoffs: return kCapability;
    default: return kValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg equilibria with finite-memory strategies"};
  app.require_subcommand(1);
  Config c;
  auto json_flag = [&](CLI::App* s) { s->add_flag("--json", c.json, "structured output"); };

  auto* solve = app.add_subcommand("solve", "exact equilibrium of a tree, DAG or cyclic game");
  solve->add_option("game", c.input, "game file")->required();
  solve->add_option("--profile", c.profile_path, "write the profile here");
  solve->add_flag("--emit-sets", c.emit_sets, "include commitment sets");
  solve->add_flag("--force-unfold", c.force_unfold, "print the unfolded game to stderr");
  json_flag(solve);

  auto* verify = app.add_subcommand("verify", "check a profile against a game");
  verify->add_option("--game", c.game_path, "game file")->required();
  verify->add_option("--profile", c.profile_path, "profile file")->required();
  verify->add_option("--claimed", c.claimed, "claimed outcome u1,u2");

  auto* maxmin = app.add_subcommand("maxmin", "follower guarantees and punishing moves");
  maxmin->add_option("game", c.input, "game file")->required();
  json_flag(maxmin);

  auto* approx = app.add_subcommand("approx-chance", "grid approximation for games with chance");
  approx->add_option("game", c.input, "game file")->required();
  auto* eps = approx->add_option("--epsilon", c.epsilon, "grid step");
  approx->add_option("--grid", c.grid, "number of grid cells")->excludes(eps);
  approx->add_option("--profile", c.profile_path, "write the profile here");
  approx->add_flag("--emit-grid", c.emit_grid, "include the value tables");
  json_flag(approx);

  auto* oracle = app.add_subcommand("oracle", "brute-force reference value");
  oracle->add_option("game", c.input, "game file")->required();
  oracle->add_option("--resolution", c.resolution, "leader probabilities are multiples of 1/N");
  oracle->add_option("--unroll-cap", c.unroll_cap, "node cap for tree unrolling");
  oracle->add_flag("--memoryless", c.memoryless, "best memoryless profile instead");
  json_flag(oracle);

  auto* gen = app.add_subcommand("gen", "random game");
  gen->add_option("--family", c.family, "tree, dag, layered, cyclic or chance");
  gen->add_option("-n,--size", c.size, "node budget");
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("-o,--output", c.output, "output file");

  auto* bench = app.add_subcommand("bench", "timings as CSV");
  bench->add_option("--family", c.family, "generator family");
  bench->add_option("--sizes", c.sizes, "instance sizes")->delimiter(',');
  bench->add_option("--seed", c.seed, "random seed");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  dot->add_option("game", c.input, "game file")->required();
  dot->add_flag("--unfold", c.force_unfold, "render the unfolded game");
  dot->add_option("--profile", c.profile_path, "annotate edges with this profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }
  try {
    if (*solve) return cmd_solve(c);
    if (*verify) return cmd_verify(c);
    if (*maxmin) return cmd_maxmin(c);
    if (*approx) return cmd_approx(c);
    if (*oracle) return cmd_oracle(c);
    if (*gen) return cmd_gen(c);
    if (*bench) return cmd_bench(c);
    if (*dot) return cmd_dot(c);
  } catch (const GameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
