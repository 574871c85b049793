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
#include "sse/upward.hpp"

namespace sse {
namespace {

using testing::id;
using testing::load_fixture;
using testing::q;

TEST(UpwardPass, EvenMixtureRoot) {
  GameGraph g = load_fixture("even_mix");
  UpwardResult r = upward_pass(g);
  EntryRef best = select_root_outcome(g, r.sets);
  const Outcome& p = entry_at(r.sets, best).point;
  EXPECT_EQ(p.u1, 1);
  EXPECT_EQ(p.u2, 1);
  auto mix = leaf_mix(r.sets, best);
  EXPECT_EQ(mix.at(id(g, "l1")), q(1, 2));
  EXPECT_EQ(mix.at(id(g, "l2")), q(1, 2));
}

TEST(UpwardPass, MemoryDagRootSet) {
  GameGraph g = load_fixture("memory_dag");
  UpwardResult r = upward_pass(g);
  std::vector<Outcome> expect{{0, 5}, {1, 6}, {2, 5}, {q(3, 2), 5}, {q(7, 6), 5}};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(r.sets[static_cast<size_t>(g.root())].points(), expect);
  EntryRef best = select_root_outcome(g, r.sets);
  EXPECT_EQ(entry_at(r.sets, best).point, (Outcome{2, 5}));
  auto mix = leaf_mix(r.sets, best);
  ASSERT_EQ(mix.size(), 2u);
  EXPECT_EQ(mix.at(id(g, "l1")), q(1, 2));
  EXPECT_EQ(mix.at(id(g, "l4")), q(1, 2));
}

TEST(UpwardPass, MaxminValues) {
  GameGraph g = load_fixture("memory_dag");
  MaxminTable t = compute_maxmin(g);
  EXPECT_EQ(t.mu2[static_cast<size_t>(id(g, "v2"))], 0);
  EXPECT_EQ(t.mu2[static_cast<size_t>(g.root())], 5);
  EXPECT_EQ(t.punish[static_cast<size_t>(id(g, "v6"))], id(g, "l2"));
}

TEST(UpwardPass, ThresholdOnlyChild) {
  GameGraph g = load_fixture("memory_dag");
  MaxminTable t = compute_maxmin(g);
  EXPECT_TRUE(incentive_threshold(g, t, id(g, "v3"), id(g, "v5")).is_neg_inf());
  EXPECT_EQ(incentive_threshold(g, t, g.root(), id(g, "v2")), Extended(q(5)));
}

TEST(UpwardPass, EmptyRootRaises) {
  GameBuilder b;
  b.node("r", Owner::Follower);
  b.leaf("a", 0, 1);
  b.root("r");
  b.edge("r", "a");
  GameGraph g = b.build(nullptr);
  UpwardResult r = upward_pass(g);
  r.sets[0].pieces.clear();
  EXPECT_THROW(select_root_outcome(g, r.sets), NoCommitment);
}

TEST(UpwardPass, HullDropsInteriorAndCollinear) {
  std::vector<Outcome> pts{{0, 0}, {1, 1}, {2, 2}, {2, 0}, {1, q(1, 2)}};
  auto h = detail::hull_indices(pts);
  EXPECT_EQ(h.size(), 3u);
}

}  // namespace
}  // namespace sse
