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

// Strategy profiles with public finite memory: both players observe the same
// memory state, which is updated on every move.

#ifndef SSE_STRATEGY_HPP
#define SSE_STRATEGY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sse/game.hpp"

namespace sse {

using StateId = int;
inline constexpr StateId kNoState = -1;

using Suggestion = std::pair<NodeId, NodeId>;  // (follower node, recommended child)

struct MemoryState {
  /// Sorted by node, at most one entry per node.
  std::vector<Suggestion> suggestions;
  bool is_red = false;
  /// Copy index (1 or 2) of the current node when the profile was mapped back
  /// from a twice-unfolded cyclic game; 0 otherwise.
  int visit_phase = 0;
  std::string label;

  std::optional<NodeId> suggestion(NodeId v) const {
    auto it = std::lower_bound(suggestions.begin(), suggestions.end(), Suggestion{v, kNoNode});
    if (it != suggestions.end() && it->first == v) return it->second;
    return std::nullopt;
  }
};

/// Memory states plus the update function. Explicit transitions cover the
/// moves that change state; every other move keeps the state, except a
/// follower leaving a suggestion, which raises the red flag. The red state
/// is absorbing.
struct MemoryMachine {
  std::vector<MemoryState> states;
  StateId initial = 0;
  StateId red = kNoState;
  std::map<std::tuple<StateId, NodeId, NodeId>, StateId> transitions;

  size_t size() const { return states.size(); }

  StateId update(const GameGraph& g, StateId m, NodeId v, NodeId w) const {
    if (m == red) return red;
    if (g.owner(v) == Owner::Follower) {
      auto s = states.at(static_cast<size_t>(m)).suggestion(v);
      if (s && *s != w) return red;
    }
    if (auto it = transitions.find({m, v, w}); it != transitions.end()) return it->second;
    return m;
  }
};

using Distribution = std::vector<std::pair<NodeId, Rational>>;

/// Leader and follower tables indexed by (memory state, node). Pairs missing
/// from the tables fall back to the follower's suggestion, then to the
/// memoryless defaults (the punishing profile).
struct StrategyWithMemory {
  MemoryMachine machine;
  std::map<std::pair<StateId, NodeId>, Distribution> leader;
  std::map<std::pair<StateId, NodeId>, NodeId> follower;
  std::vector<NodeId> default_leader;
  std::vector<NodeId> default_follower;

  Distribution leader_dist(StateId m, NodeId v) const {
    if (auto it = leader.find({m, v}); it != leader.end()) return it->second;
    NodeId d = default_leader.at(static_cast<size_t>(v));
    return {{d, Rational(1)}};
  }
  NodeId follower_move(StateId m, NodeId v) const {
    if (auto it = follower.find({m, v}); it != follower.end()) return it->second;
    if (m != machine.red)
      if (auto s = machine.states.at(static_cast<size_t>(m)).suggestion(v)) return *s;
    return default_follower.at(static_cast<size_t>(v));
  }
};

}  // namespace sse

#endif  // SSE_STRATEGY_HPP
