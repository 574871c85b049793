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

#include <functional>
#include <map>

#include "fixtures.hpp"
#include "sse/dot.hpp"
#include "sse/downward.hpp"
#include "sse/game_io.hpp"
#include "sse/transform.hpp"

namespace sse {
namespace {

using testing::load_fixture;
using testing::q;

GameError::Kind parse_error(const std::string& text) {
  try {
    parse_game(text);
  } catch (const GameError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return GameError::Kind::Capability;
}

// Leaf -> probability of reaching it when every decision node is replaced
// by a uniform choice, by enumerating root-to-leaf paths.
std::map<std::string, Rational> reach(const GameGraph& g) {
  std::map<std::string, Rational> out;
  std::function<void(NodeId, Rational)> walk = [&](NodeId v, Rational p) {
    const Node& n = g.node(v);
    if (n.owner == Owner::Leaf) {
      out[n.name] += p;
      return;
    }
    for (size_t i = 0; i < n.children.size(); ++i)
      walk(n.children[i], p * (n.owner == Owner::Chance ? n.probs[i] : Rational(1)));
  };
  walk(g.root(), 1);
  return out;
}

TEST(GameModel, SingleLeaf) {
  GameGraph g = parse_game("root l\nnode l leaf utils 3 4\n").game;
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.shape(), Shape::Tree);
  EXPECT_EQ(g.node(g.root()).u1, 3);
  EXPECT_EQ(g.node(g.root()).u2, 4);
}

TEST(GameModel, FixtureShapes) {
  EXPECT_EQ(load_fixture("even_mix").shape(), Shape::Tree);
  GameGraph f3 = load_fixture("memory_dag");
  EXPECT_EQ(f3.shape(), Shape::Dag);
  EXPECT_EQ(f3.size(), 12u);
  EXPECT_EQ(f3.leaves().size(), 5u);
  EXPECT_EQ(load_fixture("revisit_cycle").shape(), Shape::Cyclic);
  EXPECT_EQ(load_fixture("triangle_cycle").shape(), Shape::Cyclic);
}

TEST(GameModel, NonNegativity) {
  EXPECT_TRUE(validate_nonnegative(load_fixture("revisit_cycle")));
  EXPECT_FALSE(validate_nonnegative(load_fixture("negative_cycle")));
  EXPECT_TRUE(validate_nonnegative(parse_game("root a\nnode a leader\nnode x leaf utils 0 0\nnode y leaf utils 0 0\n"
                                              "edge a x\nedge a y\n").game));
}

TEST(GameModel, RejectsMalformedInput) {
  using K = GameError::Kind;
  EXPECT_EQ(parse_error("root a\nnode a leader\nedge a b\n"), K::DanglingEdge);
  EXPECT_EQ(parse_error("root a\nnode a leader\nnode a follower\n"), K::DuplicateNode);
  EXPECT_EQ(parse_error("root a\nnode a leader\nnode b leaf utils 1 1\nedge a b\nedge a b\n"), K::DuplicateEdge);
  EXPECT_EQ(parse_error("root a\nnode a leader\nedge a a\n"), K::SelfLoop);
  EXPECT_EQ(parse_error("root a\nnode a leaf utils 1 1\nnode b leaf utils 1 1\nedge a b\n"), K::LeafWithChildren);
  EXPECT_EQ(parse_error("root a\nnode a leader\n"), K::MissingChildren);
  EXPECT_EQ(parse_error("node a leaf utils 1 1\n"), K::MissingRoot);
  EXPECT_EQ(parse_error("root z\nnode a leaf utils 1 1\n"), K::MissingRoot);
  EXPECT_EQ(parse_error("root a\nnode a chance\nnode b leaf utils 1 1\nnode c leaf utils 1 1\n"
                        "edge a b 1/2\nedge a c 1/3\n"),
            K::BadProbabilities);
  EXPECT_EQ(parse_error("root a\nnode a chance\nnode b leaf utils 1 1\nedge a b\n"), K::BadProbabilities);
  EXPECT_EQ(parse_error("root a\nnode a leader\nnode b leaf utils 1 1\nedge a b 1\n"), K::BadProbabilities);
  EXPECT_EQ(parse_error("root a\nnode a leaf utils x 1\n"), K::Syntax);
  EXPECT_EQ(parse_error("root a\nnode a king\n"), K::Syntax);
  EXPECT_EQ(parse_error("arc a b\n"), K::Syntax);
}

TEST(GameModel, PrunesUnreachableWithWarning) {
  ParsedGame p = parse_game("root a\nnode a leader\nnode b leaf utils 1 1\nnode c leaf utils 2 2\n"
                            "node lost leaf utils 9 9\nedge a b\nedge a c\n");
  EXPECT_EQ(p.game.size(), 3u);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("lost"), std::string::npos);
  EXPECT_FALSE(p.game.find("lost").has_value());
}

TEST(GameModel, RationalParsing) {
  EXPECT_EQ(*parse_rational("11/2"), q(11, 2));
  EXPECT_EQ(*parse_rational("5.5"), q(11, 2));
  EXPECT_EQ(*parse_rational("-0.125"), q(-1, 8));
  EXPECT_EQ(*parse_rational("4/6"), q(2, 3));
  EXPECT_EQ(*parse_rational("010/03"), q(10, 3));
  EXPECT_EQ(*parse_rational("017"), 17);
  EXPECT_FALSE(parse_rational("1/0").has_value());
  EXPECT_FALSE(parse_rational("1/").has_value());
  EXPECT_FALSE(parse_rational("abc").has_value());
}

TEST(GameModel, WriteParseRoundTrip) {
  for (const char* name : {"even_mix", "memory_dag", "negative_cycle", "revisit_cycle", "triangle_cycle"}) {
    GameGraph g = load_fixture(name);
    std::string text = write_game(g);
    GameGraph h = parse_game(text).game;
    EXPECT_EQ(write_game(h), text) << name;
    EXPECT_EQ(h.size(), g.size());
    EXPECT_EQ(h.edge_count(), g.edge_count());
    EXPECT_EQ(h.shape(), g.shape());
  }
}

TEST(GameModel, BinaryTransformLeaderFanOut) {
  GameGraph g = parse_game("root a\nnode a leader\nnode w leaf utils 1 1\nnode x leaf utils 2 2\n"
                           "node y leaf utils 3 3\nnode z leaf utils 4 4\n"
                           "edge a w\nedge a x\nedge a y\nedge a z\n").game;
  BinaryDag b = to_binary_dag(g);
  EXPECT_EQ(b.origin.size(), 2u);
  for (const auto& [aux, src] : b.origin) {
    EXPECT_EQ(src, g.root());
    EXPECT_EQ(b.game.owner(aux), Owner::Leader);
    EXPECT_EQ(b.game.children(aux).size(), 2u);
  }
  for (const auto& n : b.game.nodes()) EXPECT_LE(n.children.size(), 2u);
}

TEST(GameModel, BinaryTransformIdentityOnBinaryGames) {
  GameGraph g = load_fixture("memory_dag");
  BinaryDag b = to_binary_dag(g);
  EXPECT_TRUE(b.origin.empty());
  EXPECT_EQ(write_game(b.game), write_game(g));
}

TEST(GameModel, BinaryTransformChanceProbabilities) {
  GameGraph g = parse_game("root c\nnode c chance\nnode x leaf utils 1 0\nnode y leaf utils 2 0\n"
                           "node z leaf utils 3 0\nedge c x 1/2\nedge c y 1/4\nedge c z 1/4\n").game;
  BinaryDag b = to_binary_dag(g);
  ASSERT_EQ(b.origin.size(), 1u);
  for (const auto& n : b.game.nodes())
    if (n.owner == Owner::Chance) {
      ASSERT_EQ(n.probs.size(), 2u);
      EXPECT_EQ(n.probs[0], q(1, 2));
      EXPECT_EQ(n.probs[1], q(1, 2));
    }
  EXPECT_EQ(reach(b.game), reach(g));
}

TEST(GameModel, BinaryTransformPreservesReachProbabilities) {
  GameGraph g = parse_game("root c\nnode c chance\nnode d chance\n"
                           "node a leaf utils 1 0\nnode b leaf utils 2 0\nnode e leaf utils 3 0\n"
                           "node f leaf utils 4 0\nnode h leaf utils 5 0\n"
                           "edge c a 1/10\nedge c b 2/10\nedge c d 3/10\nedge c e 4/10\n"
                           "edge d e 1/7\nedge d f 2/7\nedge d h 4/7\n").game;
  BinaryDag b = to_binary_dag(g);
  EXPECT_EQ(reach(b.game), reach(g));
  for (const auto& n : b.game.nodes()) EXPECT_LE(n.children.size(), 2u);
}

TEST(GameModel, GraphDescription) {
  GameGraph leaf = parse_game("root l\nnode l leaf utils 3 4\n").game;
  std::string d = export_graph_description(leaf);
  EXPECT_NE(d.find("shape=plain"), std::string::npos);
  EXPECT_EQ(std::count(d.begin(), d.end(), ';'), 1);

  GameGraph g = load_fixture("memory_dag");
  std::string t = export_graph_description(g);
  size_t edges = 0, nodes = 0;
  for (size_t p = t.find("->"); p != std::string::npos; p = t.find("->", p + 2)) ++edges;
  for (size_t p = t.find("shape="); p != std::string::npos; p = t.find("shape=", p + 1)) ++nodes;
  EXPECT_EQ(edges, 12u);
  EXPECT_EQ(nodes, 12u);
  EXPECT_NE(t.find("\"v2\" [shape=circle]"), std::string::npos);
  EXPECT_NE(t.find("\"v0\" [shape=box"), std::string::npos);

  SynthesisResult r = solve_dag(g);
  std::string a = export_graph_description(g, &r.profile);
  EXPECT_NE(a.find("\"v0\" -> \"v2\" [label=\"suggested\""), std::string::npos);
  EXPECT_NE(a.find("\"v2\" -> \"v3\" [label=\"1/2\""), std::string::npos);
}

}  // namespace
}  // namespace sse
