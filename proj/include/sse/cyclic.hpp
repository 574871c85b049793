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

// Cyclic games: every node on a cycle gets two copies, so each node is
// visited at most twice. The unfolded game is a DAG solved exactly, and its
// profile is mapped back with the copy index kept in memory.

#ifndef SSE_CYCLIC_HPP
#define SSE_CYCLIC_HPP

#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sse/downward.hpp"
#include "sse/graph_analysis.hpp"
#include "sse/verifier.hpp"

namespace sse {

struct UnfoldedGame {
  GameGraph game;
  std::vector<NodeId> base;  // unfolded node -> base node (kNoNode for synthetic leaves)
  std::vector<int> copy;     // 0 outside cycles, else 1 or 2
  std::vector<NodeId> back_target;  // synthetic leaves: base target of the back edge
  std::set<std::pair<NodeId, NodeId>> back_edges;  // base edges
  std::vector<int> base_comp_size;  // per base node
};

namespace detail {

inline std::string copy_name(const GameGraph& g, NodeId v, int c) {
  return c == 0 ? g.node(v).name : g.node(v).name + "#" + std::to_string(c);
}

}  // namespace detail

inline UnfoldedGame unfold_twice(const GameGraph& g) {
  if (!validate_nonnegative(g))
    throw GameError(GameError::Kind::NegativePayoffs, "cyclic solving requires non-negative payoffs");
  if (g.has_chance())
    throw GameError(GameError::Kind::Capability, "chance nodes are not supported in cyclic games");
  const size_t n = g.size();
  SccDag d = scc_condense(g);
  UnfoldedGame u;
  u.base_comp_size.resize(n);
  for (size_t v = 0; v < n; ++v)
    u.base_comp_size[v] = static_cast<int>(d.components[static_cast<size_t>(d.comp_of[v])].size());
  // Back edges from a DFS started at each component's entry.
  for (size_t c = 0; c < d.components.size(); ++c) {
    const auto& comp = d.components[c];
    if (comp.size() < 2) continue;
    NodeId entry = kNoNode;
    if (d.comp_of[static_cast<size_t>(g.root())] == static_cast<int>(c)) entry = g.root();
    for (NodeId x = 0; x < static_cast<NodeId>(n) && entry == kNoNode; ++x)
      if (d.comp_of[static_cast<size_t>(x)] != static_cast<int>(c))
        for (NodeId y : g.children(x))
          if (d.comp_of[static_cast<size_t>(y)] == static_cast<int>(c) && (entry == kNoNode || y < entry)) entry = y;
    if (entry == kNoNode) entry = comp.front();
    std::map<NodeId, int> color;
    std::vector<std::pair<NodeId, size_t>> st{{entry, 0}};
    color[entry] = 1;
    while (!st.empty()) {
      auto& [x, i] = st.back();
      const auto& ch = g.children(x);
      if (i < ch.size()) {
        NodeId y = ch[i++];
        if (d.comp_of[static_cast<size_t>(y)] != static_cast<int>(c)) continue;
        if (color[y] == 1) {
          u.back_edges.insert({x, y});
        } else if (color[y] == 0) {
          color[y] = 1;
          st.push_back({y, 0});
        }
      } else {
        color[x] = 2;
        st.pop_back();
      }
    }
  }
  MaxminTable t = compute_maxmin(g);
  PunishResponse pr = punish_response(g, t);
  // Synthetic leaves stand for a third visit. The follower's payoff there is
  // exact; the leader's is set below every real leaf so no plan routes
  // through one unless nothing else is possible.
  Rational floor_u1 = 0;
  for (const auto& nd : g.nodes())
    if (nd.owner == Owner::Leaf && nd.u1 < floor_u1) floor_u1 = nd.u1;
  floor_u1 -= 1;
  GameBuilder b;
  struct Meta {
    NodeId base;
    int copy;
    NodeId target;
  };
  std::map<std::string, Meta> meta;
  auto cyc = [&](NodeId v) { return u.base_comp_size[static_cast<size_t>(v)] > 1; };
  auto declare = [&](NodeId v, int c) {
    const Node& nd = g.node(v);
    std::string name = detail::copy_name(g, v, c);
    if (nd.owner == Owner::Leaf) b.leaf(name, nd.u1, nd.u2);
    else b.node(name, nd.owner);
    meta[name] = {v, c, kNoNode};
  };
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    if (cyc(v)) {
      declare(v, 1);
      declare(v, 2);
    } else {
      declare(v, 0);
    }
  }
  auto entry_name = [&](NodeId y) { return detail::copy_name(g, y, cyc(y) ? 1 : 0); };
  for (NodeId x = 0; x < static_cast<NodeId>(n); ++x) {
    for (int c : cyc(x) ? std::vector<int>{1, 2} : std::vector<int>{0}) {
      std::string from = detail::copy_name(g, x, c);
      bool any = false;
      std::vector<std::pair<std::string, NodeId>> synthetic;
      for (NodeId y : g.children(x)) {
        bool same = cyc(x) && d.comp_of[static_cast<size_t>(x)] == d.comp_of[static_cast<size_t>(y)];
        if (!same) {
          b.edge(from, entry_name(y));
          any = true;
        } else if (!u.back_edges.count({x, y})) {
          b.edge(from, detail::copy_name(g, y, c));
          any = true;
        } else if (c == 1) {
          b.edge(from, detail::copy_name(g, y, 2));
          any = true;
        } else {
          synthetic.push_back({from + ">" + g.node(y).name, y});
        }
      }
      for (const auto& [name, y] : synthetic) {
        if (g.owner(x) == Owner::Leader && any) continue;
        b.leaf(name, floor_u1, pr.u2[static_cast<size_t>(y)]);
        meta[name] = {kNoNode, 0, y};
        b.edge(from, name);
      }
    }
  }
  b.root(entry_name(g.root()));
  u.game = b.build(nullptr);
  const size_t m = u.game.size();
  u.base.resize(m);
  u.copy.resize(m);
  u.back_target.resize(m);
  for (NodeId x = 0; x < static_cast<NodeId>(m); ++x) {
    const Meta& mt = meta.at(u.game.node(x).name);
    u.base[static_cast<size_t>(x)] = mt.base;
    u.copy[static_cast<size_t>(x)] = mt.copy;
    u.back_target[static_cast<size_t>(x)] = mt.target;
  }
  return u;
}

struct CyclicSolution {
  UnfoldedGame unfolded;
  SynthesisResult unfolded_solution;
  Outcome value;
  StrategyWithMemory profile;
};

/// Maps a profile of the unfolded game to the base game. Base memory states
/// pair an unfolded state with the copy index of the current node.
inline StrategyWithMemory fold_profile(const GameGraph& g, const UnfoldedGame& u, const StrategyWithMemory& su) {
  StrategyWithMemory out = punishing_strategy(g);
  MemoryState red = out.machine.states.front();
  out.machine.states.clear();
  std::map<std::pair<NodeId, int>, NodeId> where;  // (base node, copy) -> unfolded node
  for (NodeId x = 0; x < static_cast<NodeId>(u.game.size()); ++x)
    if (u.base[static_cast<size_t>(x)] != kNoNode)
      where[{u.base[static_cast<size_t>(x)], u.copy[static_cast<size_t>(x)]}] = x;
  auto unfolded_child = [&](NodeId x, NodeId w) {
    for (NodeId y : u.game.children(x)) {
      NodeId by = u.base[static_cast<size_t>(y)];
      if (by == w || (by == kNoNode && u.back_target[static_cast<size_t>(y)] == w)) return y;
    }
    return kNoNode;
  };
  std::map<std::pair<StateId, int>, StateId> ids;
  std::deque<std::pair<StateId, int>> q;
  const StateId kRed = -2;
  auto state_of = [&](StateId mu, int c) -> StateId {
    if (mu == su.machine.red) return kRed;
    auto [it, fresh] = ids.emplace(std::pair{mu, c}, static_cast<StateId>(ids.size()));
    if (fresh) q.push_back({mu, c});
    return it->second;
  };
  struct Pending {
    StateId from;
    NodeId v, w;
    StateId to;
  };
  std::vector<Pending> pending;
  state_of(su.machine.initial, u.copy[static_cast<size_t>(u.game.root())]);
  std::vector<MemoryState> states;
  while (!q.empty()) {
    auto [mu, c] = q.front();
    q.pop_front();
    StateId m = ids.at({mu, c});
    if (static_cast<size_t>(m) >= states.size()) states.resize(static_cast<size_t>(m) + 1);
    MemoryState st;
    st.visit_phase = c;
    st.label = su.machine.states.at(static_cast<size_t>(mu)).label + "/" + std::to_string(c);
    for (const auto& [key, x] : where) {
      if (key.second != c) continue;
      NodeId v = key.first;
      const Node& nd = g.node(v);
      if (nd.owner == Owner::Leader) {
        Distribution dist;
        for (const auto& [y, p] : su.leader_dist(mu, x)) {
          NodeId by = u.base[static_cast<size_t>(y)];
          dist.push_back({by == kNoNode ? u.back_target[static_cast<size_t>(y)] : by, p});
        }
        out.leader[{m, v}] = dist;
      } else if (nd.owner == Owner::Follower) {
        if (auto s = su.machine.states.at(static_cast<size_t>(mu)).suggestion(x)) {
          NodeId by = u.base[static_cast<size_t>(*s)];
          st.suggestions.push_back({v, by == kNoNode ? u.back_target[static_cast<size_t>(*s)] : by});
        }
      }
      for (NodeId w : nd.children) {
        NodeId y = unfolded_child(x, w);
        StateId to = kRed;
        if (y != kNoNode && u.base[static_cast<size_t>(y)] != kNoNode)
          to = state_of(su.machine.update(u.game, mu, x, y), u.copy[static_cast<size_t>(y)]);
        pending.push_back({m, v, w, to});
      }
    }
    std::sort(st.suggestions.begin(), st.suggestions.end());
    for (const auto& [v, w] : st.suggestions) out.follower[{m, v}] = w;
    states[static_cast<size_t>(m)] = st;
  }
  out.machine.states = states;
  out.machine.initial = 0;
  out.machine.red = static_cast<StateId>(states.size());
  out.machine.states.push_back(red);
  for (const auto& p : pending) {
    StateId to = p.to == kRed ? out.machine.red : p.to;
    if (to == p.from) continue;
    auto s = states[static_cast<size_t>(p.from)].suggestion(p.v);
    if (to == out.machine.red && g.owner(p.v) == Owner::Follower && s && *s != p.w) continue;
    out.machine.transitions[{p.from, p.v, p.w}] = to;
  }
  return out;
}

inline CyclicSolution solve_cyclic(const GameGraph& g) {
  CyclicSolution r;
  r.unfolded = unfold_twice(g);
  r.unfolded_solution = solve_dag(r.unfolded.game);
  r.value = r.unfolded_solution.value;
  r.profile = fold_profile(g, r.unfolded, r.unfolded_solution.profile);
  for (const auto& [leaf, p] : r.unfolded_solution.leaf_distribution)
    if (r.unfolded.back_target[static_cast<size_t>(leaf)] != kNoNode && p > 0) {
      r.value = evaluate(g, r.profile);
      break;
    }
  return r;
}

}  // namespace sse

#endif  // SSE_CYCLIC_HPP
