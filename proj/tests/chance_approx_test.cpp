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

#include "fixtures.hpp"
#include "sse/chance_approx.hpp"
#include "sse/downward.hpp"
#include "sse/generate.hpp"
#include "sse/oracle.hpp"
#include "sse/verifier.hpp"

namespace sse {
namespace {

using testing::id;
using testing::load_fixture;
using testing::q;

GameGraph coin_game() {
  GameBuilder b;
  b.node("c", Owner::Chance).leaf("a", 4, 0).leaf("z", 0, 6);
  b.edge("c", "a", q(1, 2)).edge("c", "z", q(1, 2)).root("c");
  return b.build(nullptr);
}

TEST(ChanceApprox, LeafRow) {
  GameBuilder b;
  b.node("r", Owner::Leader).leaf("a", 3, 4).leaf("z", 0, 0);
  b.edge("r", "a").edge("r", "z").root("r");
  GameGraph g = b.build(nullptr);
  ValueGrid grid = grid_init(g, 1);
  ASSERT_EQ(grid.size(), 4);
  grid.ks.push_back(4);  // extend to k = 4 for the row check
  Row r = leaf_row(g, id(g, "a"), grid);
  EXPECT_EQ(r, (Row{Extended(q(4)), Extended(q(4)), Extended(q(4)), Extended(q(4)), Extended::neg_inf()}));
  Row z = leaf_row(g, id(g, "z"), grid);
  EXPECT_TRUE(z[0].is_finite());
  EXPECT_TRUE(z[1].is_neg_inf());
}

TEST(ChanceApprox, ChanceRowMatchesNaive) {
  GameGraph g = coin_game();
  ValueGrid grid = grid_init(g, 1);
  EXPECT_EQ(grid.u_low, 0);
  EXPECT_EQ(grid.u_high, 4);
  for (NodeId l : g.leaves()) grid.A[static_cast<size_t>(l)] = leaf_row(g, l, grid);
  Row fast = chance_row(g, g.root(), grid);
  Row slow = chance_row_naive(g, g.root(), grid);
  EXPECT_EQ(fast, slow);
  EXPECT_EQ(fast[2], Extended(q(3)));
  EXPECT_TRUE(fast[3].is_neg_inf());
}

TEST(ChanceApprox, FollowerCases) {
  GameBuilder b;
  b.node("f", Owner::Follower).leaf("a", 0, 0).leaf("z", 0, 0);
  b.edge("f", "a").edge("f", "z").root("f");
  GameGraph g = b.build(nullptr);
  ValueGrid grid = grid_init(g, 1);
  MaxminTable mm = compute_maxmin(g);
  NodeId a = id(g, "a"), z = id(g, "z");
  auto run = [&](Extended al, Rational mu_r, Extended ar, Rational mu_l) {
    grid.A[static_cast<size_t>(a)] = {al};
    grid.A[static_cast<size_t>(z)] = {ar};
    mm.mu2[static_cast<size_t>(a)] = mu_l;
    mm.mu2[static_cast<size_t>(z)] = mu_r;
    return follower_row(g, g.root(), grid, mm)[0];
  };
  EXPECT_EQ(run(Extended(q(5)), 3, Extended::neg_inf(), 0), Extended(q(5)));
  EXPECT_TRUE(run(Extended(q(2)), 3, Extended(q(1)), 2).is_neg_inf());
  EXPECT_EQ(run(Extended(q(5)), 3, Extended(q(6)), 4), Extended(q(6)));
}

TEST(ChanceApprox, LeaderSplitEndpoints) {
  GameBuilder b;
  b.node("r", Owner::Leader).leaf("a", 2, 0).leaf("z", 0, 2);
  b.edge("r", "a").edge("r", "z").root("r");
  GameGraph g = b.build(nullptr);
  ValueGrid grid = grid_init(g, 1);
  for (NodeId l : g.leaves()) grid.A[static_cast<size_t>(l)] = leaf_row(g, l, grid);
  ChoiceRow c;
  Row r = leader_row(g, g.root(), grid, compute_maxmin(g), &c);
  EXPECT_EQ(r[1], Extended(q(1)));
  EXPECT_EQ(c[1].p, q(1, 2));
  EXPECT_EQ(r[2], Extended(q(0)));
  EXPECT_EQ(c[2].p, 1);
}

TEST(ChanceApprox, AchievableOnSharedSubgame) {
  GameGraph g = load_fixture("memory_dag");
  MaxminTable mm = compute_maxmin(g);
  EXPECT_TRUE(achievable(g, mm, id(g, "v2"), id(g, "v5"), 5));
  EXPECT_TRUE(achievable(g, mm, id(g, "v2"), id(g, "v6"), 5));
  EXPECT_FALSE(achievable(g, mm, id(g, "v2"), id(g, "v6"), -1));
}

TEST(ChanceApprox, CoinGameValue) {
  GameGraph g = coin_game();
  ApproxResult r = approx_solve(g, 1);
  EXPECT_EQ(r.bound, 2);
  EXPECT_EQ(r.follower_value, 3);
  EXPECT_TRUE(check_certificate(g, r.profile).ok);
}

TEST(ChanceApprox, MemoryDagThroughGrid) {
  GameGraph g = load_fixture("memory_dag");
  ApproxResult r = approx_solve(g, q(1, 4));
  EXPECT_EQ(r.bound, 2);
  Outcome e = evaluate(g, r.profile);
  EXPECT_GE(e.u1, r.bound);
  EXPECT_TRUE(check_certificate(g, r.profile).ok);
}

TEST(ChanceApprox, GoldensAcrossSteps) {
  for (const char* name : {"even_mix", "memory_dag"}) {
    GameGraph g = load_fixture(name);
    Rational exact = solve_dag(g).value.u1;
    Rational prev = -1;
    for (Rational eps : {q(1), q(1, 2), q(1, 4)}) {
      ApproxResult r = approx_solve(g, eps);
      EXPECT_LE(r.bound, exact) << name;
      if (eps <= q(1, 2)) EXPECT_EQ(r.bound, exact) << name;
      EXPECT_GE(r.bound, prev) << name;
      prev = r.bound;
    }
  }
}

TEST(ChanceApprox, RandomChanceGames) {
  for (int seed = 0; seed < 30; ++seed) {
    GameGraph g = generate_chance(4 + seed % 7, static_cast<uint64_t>(seed));
    ApproxResult r = approx_solve(g, q(1, 2));
    for (const auto& row : r.grid.A)
      for (size_t t = 1; t < row.size(); ++t) ASSERT_LE(row[t], row[t - 1]) << seed;
    Outcome e = evaluate(g, r.profile);
    EXPECT_GE(e.u1, r.bound) << seed;
    auto cert = check_certificate(g, r.profile);
    EXPECT_TRUE(cert.ok) << seed << " " << cert.reason;
  }
}

}  // namespace
}  // namespace sse
