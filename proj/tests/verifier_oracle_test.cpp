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
#include "sse/downward.hpp"
#include "sse/generate.hpp"
#include "sse/oracle.hpp"
#include "sse/verifier.hpp"

namespace sse {
namespace {

using testing::id;
using testing::load_fixture;
using testing::q;

TEST(Oracle, UnrollCountsHistories) {
  GameGraph g = load_fixture("memory_dag");
  GameGraph t = unroll_to_tree(g);
  EXPECT_EQ(t.size(), 19u);
  EXPECT_EQ(t.shape(), Shape::Tree);
}

TEST(Oracle, BruteForceGoldens) {
  EXPECT_EQ(brute_force_sse(load_fixture("even_mix"), 2), (Outcome{1, 1}));
  EXPECT_EQ(brute_force_sse(load_fixture("memory_dag"), 12), (Outcome{2, 5}));
}

TEST(Oracle, MemorylessCommitment) {
  GameGraph g = load_fixture("memory_dag");
  EXPECT_EQ(best_memoryless(g, 1).u1, 1);
  EXPECT_EQ(best_memoryless(g, 12).u1, q(7, 6));
}

TEST(Verifier, DetectsProfitableDeviation) {
  GameGraph g = load_fixture("even_mix");
  StrategyWithMemory s = solve_dag(g).profile;
  // Leader always plays l2: the follower prefers to leave.
  s.leader[{s.machine.initial, id(g, "v2")}] = {{id(g, "l2"), Rational(1)}};
  auto rep = check_certificate(g, s, Outcome{2, 0});
  EXPECT_FALSE(rep.ok);
}

TEST(Verifier, DetectsWrongClaim) {
  GameGraph g = load_fixture("memory_dag");
  SynthesisResult r = solve_dag(g);
  EXPECT_FALSE(check_certificate(g, r.profile, Outcome{3, 5}).ok);
}

TEST(Verifier, NonTerminatingProfile) {
  GameBuilder b;
  b.node("a", Owner::Leader).node("c", Owner::Leader).leaf("x", 1, 1);
  b.edge("a", "c").edge("c", "a").edge("a", "x").root("a");
  GameGraph g = b.build(nullptr);
  StrategyWithMemory s = punishing_strategy(g);
  s.leader[{0, id(g, "a")}] = {{id(g, "c"), Rational(1)}};
  s.leader[{0, id(g, "c")}] = {{id(g, "a"), Rational(1)}};
  EXPECT_THROW(evaluate(g, s), NonTerminatingProfile);
}

class RandomAgreement : public ::testing::TestWithParam<int> {};

TEST_P(RandomAgreement, SolverMatchesOracles) {
  const int seed = GetParam();
  for (GameGraph g : {generate_tree(8 + seed % 10, static_cast<uint64_t>(seed)),
                      generate_dag(6 + seed % 7, static_cast<uint64_t>(seed))}) {
    SynthesisResult r = solve_dag(g);
    auto cert = check_certificate(g, r.profile, r.value);
    ASSERT_TRUE(cert.ok) << cert.reason << "\n" << seed;
    GameGraph t = unroll_to_tree(g);
    EXPECT_EQ(solve_dag(t).value.u1, r.value.u1) << seed;
    Outcome bf = brute_force_sse(g, 12);
    EXPECT_LE(bf.u1, r.value.u1) << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomAgreement, ::testing::Range(0, 40));

}  // namespace
}  // namespace sse
