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

// Native game format. One record per line, '#' starts a comment:
//
//   root <name>
//   node <name> leader|follower|chance
//   node <name> leaf utils <u1> <u2>
//   edge <from> <to> [<prob>]          # prob required iff <from> is chance
//
// Numbers are integers, fractions ("11/2") or decimals ("5.5"); all are
// stored exactly. Node ids follow the order of the node records.

#ifndef SSE_GAME_IO_HPP
#define SSE_GAME_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sse/game.hpp"

namespace sse {

struct ParsedGame {
  GameGraph game;
  std::vector<std::string> warnings;
};

inline ParsedGame parse_game(std::string_view text) {
  using K = GameError::Kind;
  GameBuilder b;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw GameError(K::Syntax, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto number = [&](const std::string& tok) {
    auto r = parse_rational(tok);
    if (!r) fail("bad number '" + tok + "'");
    return *r;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "root") {
      if (tok.size() != 2) fail("expected 'root <name>'");
      b.root(tok[1]);
    } else if (kw == "node") {
      if (tok.size() < 3) fail("expected 'node <name> <owner>'");
      const std::string& o = tok[2];
      if (o == "leaf") {
        if (tok.size() != 6 || tok[3] != "utils") fail("expected 'node <name> leaf utils <u1> <u2>'");
        b.leaf(tok[1], number(tok[4]), number(tok[5]));
      } else {
        if (tok.size() != 3) fail("unexpected tokens after owner");
        if (o == "leader") b.node(tok[1], Owner::Leader);
        else if (o == "follower") b.node(tok[1], Owner::Follower);
        else if (o == "chance") b.node(tok[1], Owner::Chance);
        else fail("unknown owner '" + o + "'");
      }
    } else if (kw == "edge") {
      if (tok.size() == 3) b.edge(tok[1], tok[2]);
      else if (tok.size() == 4) b.edge(tok[1], tok[2], number(tok[3]));
      else fail("expected 'edge <from> <to> [prob]'");
    } else {
      fail("unknown record '" + kw + "'");
    }
  }
  ParsedGame out;
  out.game = b.build(&out.warnings);
  return out;
}

inline ParsedGame load_game(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GameError(GameError::Kind::Syntax, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_game(ss.str());
}

/// Emits the native format; parse_game(write_game(g)) reproduces g.
inline std::string write_game(const GameGraph& g) {
  std::ostringstream os;
  os << "root " << g.node(g.root()).name << "\n";
  for (const auto& n : g.nodes()) {
    os << "node " << n.name << " " << owner_name(n.owner);
    if (n.owner == Owner::Leaf) os << " utils " << n.u1.get_str() << " " << n.u2.get_str();
    os << "\n";
  }
  for (const auto& n : g.nodes())
    for (size_t i = 0; i < n.children.size(); ++i) {
      os << "edge " << n.name << " " << g.node(n.children[i]).name;
      if (n.owner == Owner::Chance) os << " " << n.probs[i].get_str();
      os << "\n";
    }
  return os.str();
}

}  // namespace sse

#endif  // SSE_GAME_IO_HPP
