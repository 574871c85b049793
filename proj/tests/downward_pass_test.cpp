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
#include "sse/verifier.hpp"

namespace sse {
namespace {

using testing::id;
using testing::load_fixture;
using testing::q;

TEST(DownwardPass, EvenMixtureProfile) {
  GameGraph g = load_fixture("even_mix");
  SynthesisResult r = solve_dag(g);
  Distribution d = r.profile.leader_dist(r.profile.machine.initial, id(g, "v2"));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].second, q(1, 2));
  EXPECT_EQ(d[1].second, q(1, 2));
  EXPECT_EQ(evaluate(g, r.profile), (Outcome{1, 1}));
  EXPECT_TRUE(check_certificate(g, r.profile, r.value).ok);
}

TEST(DownwardPass, MemoryDagStates) {
  GameGraph g = load_fixture("memory_dag");
  SynthesisResult r = solve_dag(g);
  const MemoryMachine& mm = r.profile.machine;
  ASSERT_EQ(mm.size(), 4u);
  std::vector<Suggestion> m0{{g.root(), id(g, "v2")}, {id(g, "v3"), id(g, "v5")}, {id(g, "v4"), id(g, "v5")}};
  std::sort(m0.begin(), m0.end());
  EXPECT_EQ(mm.states[static_cast<size_t>(mm.initial)].suggestions, m0);
  StateId m3 = mm.update(g, mm.initial, id(g, "v2"), id(g, "v3"));
  StateId m4 = mm.update(g, mm.initial, id(g, "v2"), id(g, "v4"));
  EXPECT_EQ(mm.states[static_cast<size_t>(m3)].suggestion(id(g, "v5")), id(g, "v6"));
  EXPECT_EQ(mm.states[static_cast<size_t>(m4)].suggestion(id(g, "v5")), id(g, "v7"));
  EXPECT_EQ(mm.update(g, mm.initial, g.root(), id(g, "l5")), mm.red);
  EXPECT_EQ(evaluate(g, r.profile), (Outcome{2, 5}));
  EXPECT_TRUE(check_certificate(g, r.profile, r.value).ok);
}

TEST(DownwardPass, RedStateIsAbsorbing) {
  GameGraph g = load_fixture("memory_dag");
  SynthesisResult r = solve_dag(g);
  const MemoryMachine& mm = r.profile.machine;
  EXPECT_TRUE(mm.states[static_cast<size_t>(mm.red)].is_red);
  EXPECT_EQ(mm.update(g, mm.red, id(g, "v2"), id(g, "v3")), mm.red);
  EXPECT_EQ(r.profile.leader_dist(mm.red, id(g, "v6")).front().first, id(g, "l2"));
}

TEST(DownwardPass, PunishingProfileCertifiesMaxmin) {
  GameGraph g = load_fixture("memory_dag");
  StrategyWithMemory s = punishing_strategy(g);
  BestResponse br = best_response(g, s);
  EXPECT_EQ(br.value.u2, compute_maxmin(g).mu2[static_cast<size_t>(g.root())]);
}

}  // namespace
}  // namespace sse
