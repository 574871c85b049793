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

#ifndef SSE_GRAPH_ANALYSIS_HPP
#define SSE_GRAPH_ANALYSIS_HPP

#include <algorithm>
#include <deque>
#include <utility>
#include <vector>

#include "sse/game.hpp"
#include "sse/strategy.hpp"

namespace sse {

/// Children before parents. Throws NotDag on a cycle.
inline std::vector<NodeId> reverse_topo_order(const GameGraph& g) {
  const size_t n = g.size();
  std::vector<int> color(n, 0);
  std::vector<NodeId> out;
  out.reserve(n);
  std::vector<std::pair<NodeId, size_t>> stack;
  for (NodeId s = 0; s < static_cast<NodeId>(n); ++s) {
    if (color[static_cast<size_t>(s)] != 0) continue;
    stack.push_back({s, 0});
    color[static_cast<size_t>(s)] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      const auto& ch = g.children(v);
      if (i < ch.size()) {
        NodeId w = ch[i++];
        int& c = color[static_cast<size_t>(w)];
        if (c == 1) throw GameError(GameError::Kind::NotDag, "game graph contains a cycle");
        if (c == 0) {
          c = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[static_cast<size_t>(v)] = 2;
        out.push_back(v);
        stack.pop_back();
      }
    }
  }
  return out;
}

struct SccDag {
  std::vector<std::vector<NodeId>> components;  // members ascending
  std::vector<int> comp_of;
  std::vector<std::vector<int>> comp_edges;     // successor components, ascending
  std::vector<int> topo_order;                  // successors before predecessors
  bool nontrivial(int c) const { return components[static_cast<size_t>(c)].size() > 1; }
};

/// Tarjan's algorithm over an explicit successor list.
inline SccDag scc_condense(const std::vector<std::vector<NodeId>>& succ) {
  const size_t n = succ.size();
  SccDag d;
  d.comp_of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> st;
  int counter = 0;
  std::vector<std::pair<NodeId, size_t>> call;
  for (NodeId s = 0; s < static_cast<NodeId>(n); ++s) {
    if (index[static_cast<size_t>(s)] != -1) continue;
    call.push_back({s, 0});
    while (!call.empty()) {
      auto& [v, i] = call.back();
      const size_t vu = static_cast<size_t>(v);
      if (i == 0 && index[vu] == -1) {
        index[vu] = low[vu] = counter++;
        st.push_back(v);
        on_stack[vu] = true;
      }
      if (i < succ[vu].size()) {
        NodeId w = succ[vu][i++];
        const size_t wu = static_cast<size_t>(w);
        if (index[wu] == -1) {
          call.push_back({w, 0});
        } else if (on_stack[wu]) {
          low[vu] = std::min(low[vu], index[wu]);
        }
        continue;
      }
      if (low[vu] == index[vu]) {
        std::vector<NodeId> comp;
        NodeId w;
        do {
          w = st.back();
          st.pop_back();
          on_stack[static_cast<size_t>(w)] = false;
          d.comp_of[static_cast<size_t>(w)] = static_cast<int>(d.components.size());
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        d.components.push_back(std::move(comp));
      }
      NodeId done = v;
      call.pop_back();
      if (!call.empty()) {
        size_t pu = static_cast<size_t>(call.back().first);
        low[pu] = std::min(low[pu], low[static_cast<size_t>(done)]);
      }
    }
  }
  d.comp_edges.resize(d.components.size());
  for (size_t v = 0; v < n; ++v)
    for (NodeId w : succ[v]) {
      int a = d.comp_of[v], b = d.comp_of[static_cast<size_t>(w)];
      if (a != b) d.comp_edges[static_cast<size_t>(a)].push_back(b);
    }
  for (auto& e : d.comp_edges) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  // Tarjan emits components with successors first.
  for (int c = 0; c < static_cast<int>(d.components.size()); ++c) d.topo_order.push_back(c);
  return d;
}

inline SccDag scc_condense(const GameGraph& g) {
  std::vector<std::vector<NodeId>> succ(g.size());
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) succ[static_cast<size_t>(v)] = g.children(v);
  return scc_condense(succ);
}

/// Follower's guaranteed payoff (mu2) and the leader's punishing move.
struct MaxminTable {
  std::vector<Rational> mu2;
  std::vector<NodeId> punish;  // leader nodes only, kNoNode elsewhere
};

namespace detail {

inline NodeId argmin_child(const GameGraph& g, NodeId v, const std::vector<Rational>& val) {
  NodeId best = kNoNode;
  for (NodeId w : g.children(v))
    if (best == kNoNode || val[static_cast<size_t>(w)] < val[static_cast<size_t>(best)]) best = w;
  return best;
}

inline Rational local_value(const GameGraph& g, NodeId v, const std::vector<Rational>& val) {
  const Node& n = g.node(v);
  switch (n.owner) {
    case Owner::Leaf:
      return n.u2;
    case Owner::Leader:
      return val[static_cast<size_t>(argmin_child(g, v, val))];
    case Owner::Follower: {
      Rational best = val[static_cast<size_t>(n.children.front())];
      for (NodeId w : n.children) best = std::max(best, val[static_cast<size_t>(w)]);
      return best;
    }
    case Owner::Chance: {
      Rational s = 0;
      for (size_t i = 0; i < n.children.size(); ++i) s += n.probs[i] * val[static_cast<size_t>(n.children[i])];
      return s;
    }
  }
  return 0;
}

}  // namespace detail

/// Backward recurrence on DAGs. On cyclic games infinite play is worth 0 to
/// both players and the result is the least fixed point from 0, which needs
/// non-negative payoffs and no chance nodes.
inline MaxminTable compute_maxmin(const GameGraph& g) {
  const size_t n = g.size();
  MaxminTable t;
  t.mu2.assign(n, Rational(0));
  t.punish.assign(n, kNoNode);
  if (g.shape() != Shape::Cyclic) {
    for (NodeId v : reverse_topo_order(g)) t.mu2[static_cast<size_t>(v)] = detail::local_value(g, v, t.mu2);
  } else {
    if (!validate_nonnegative(g))
      throw GameError(GameError::Kind::NegativePayoffs, "cyclic games require non-negative payoffs");
    if (g.has_chance())
      throw GameError(GameError::Kind::Capability, "chance nodes are not supported in cyclic games");
    SccDag d = scc_condense(g);
    for (int c : d.topo_order) {
      const auto& comp = d.components[static_cast<size_t>(c)];
      bool changed = true;
      while (changed) {
        changed = false;
        for (NodeId v : comp) {
          Rational nv = detail::local_value(g, v, t.mu2);
          if (nv != t.mu2[static_cast<size_t>(v)]) {
            t.mu2[static_cast<size_t>(v)] = nv;
            changed = true;
          }
        }
      }
    }
  }
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (g.owner(v) == Owner::Leader) t.punish[static_cast<size_t>(v)] = detail::argmin_child(g, v, t.mu2);
  return t;
}

/// Follower's lexicographic (u2, u1) best response to the punishing strategy.
struct PunishResponse {
  std::vector<NodeId> move;  // follower nodes only
  std::vector<Rational> u1, u2;
};

inline PunishResponse punish_response(const GameGraph& g, const MaxminTable& t) {
  const size_t n = g.size();
  PunishResponse r;
  r.move.assign(n, kNoNode);
  r.u1.assign(n, Rational(0));
  r.u2.assign(n, Rational(0));
  auto better = [&](NodeId a, NodeId b) {  // a strictly lex-better than b
    size_t au = static_cast<size_t>(a), bu = static_cast<size_t>(b);
    if (r.u2[au] != r.u2[bu]) return r.u2[au] > r.u2[bu];
    return r.u1[au] > r.u1[bu];
  };
  if (g.shape() != Shape::Cyclic) {
    for (NodeId v : reverse_topo_order(g)) {
      const Node& nd = g.node(v);
      const size_t vu = static_cast<size_t>(v);
      NodeId pick = kNoNode;
      switch (nd.owner) {
        case Owner::Leaf:
          r.u1[vu] = nd.u1;
          r.u2[vu] = nd.u2;
          break;
        case Owner::Leader:
          pick = t.punish[vu];
          break;
        case Owner::Follower:
          for (NodeId w : nd.children)
            if (pick == kNoNode || better(w, pick)) pick = w;
          r.move[vu] = pick;
          break;
        case Owner::Chance:
          for (size_t i = 0; i < nd.children.size(); ++i) {
            r.u1[vu] += nd.probs[i] * r.u1[static_cast<size_t>(nd.children[i])];
            r.u2[vu] += nd.probs[i] * r.u2[static_cast<size_t>(nd.children[i])];
          }
          break;
      }
      if (pick != kNoNode) {
        r.u1[vu] = r.u1[static_cast<size_t>(pick)];
        r.u2[vu] = r.u2[static_cast<size_t>(pick)];
      }
    }
    return r;
  }
  // Cyclic, deterministic leader: the follower steers towards the lex-best
  // reachable leaf; with no reachable leaf play loops forever for (0, 0).
  std::vector<std::vector<NodeId>> succ(n);
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    if (g.owner(v) == Owner::Leader) succ[static_cast<size_t>(v)] = {t.punish[static_cast<size_t>(v)]};
    else succ[static_cast<size_t>(v)] = g.children(v);
  }
  SccDag d = scc_condense(succ);
  std::vector<bool> has_leaf(d.components.size(), false);
  std::vector<std::pair<Rational, Rational>> best(d.components.size());  // (u2, u1)
  for (int c : d.topo_order) {
    const size_t cu = static_cast<size_t>(c);
    for (NodeId v : d.components[cu])
      if (g.is_leaf(v)) {
        std::pair<Rational, Rational> p{g.node(v).u2, g.node(v).u1};
        if (!has_leaf[cu] || p > best[cu]) best[cu] = p;
        has_leaf[cu] = true;
      }
    for (int s : d.comp_edges[cu]) {
      const size_t su = static_cast<size_t>(s);
      if (has_leaf[su] && (!has_leaf[cu] || best[su] > best[cu])) best[cu] = best[su];
      has_leaf[cu] = has_leaf[cu] || has_leaf[su];
    }
  }
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const size_t c = static_cast<size_t>(d.comp_of[static_cast<size_t>(v)]);
    if (has_leaf[c]) {
      r.u2[static_cast<size_t>(v)] = best[c].first;
      r.u1[static_cast<size_t>(v)] = best[c].second;
    }
  }
  // Shortest distance to a target leaf within each value class.
  std::vector<std::vector<NodeId>> pred(n);
  for (size_t v = 0; v < n; ++v)
    for (NodeId w : succ[v]) pred[static_cast<size_t>(w)].push_back(static_cast<NodeId>(v));
  auto same = [&](size_t a, size_t b) { return r.u1[a] == r.u1[b] && r.u2[a] == r.u2[b]; };
  std::vector<long> dist(n, -1);
  std::deque<NodeId> q;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const size_t vu = static_cast<size_t>(v);
    if (g.is_leaf(v) && has_leaf[static_cast<size_t>(d.comp_of[vu])]) {
      dist[vu] = 0;
      q.push_back(v);
    }
  }
  while (!q.empty()) {
    NodeId w = q.front();
    q.pop_front();
    for (NodeId p : pred[static_cast<size_t>(w)]) {
      const size_t pu = static_cast<size_t>(p);
      if (dist[pu] == -1 && same(pu, static_cast<size_t>(w))) {
        dist[pu] = dist[static_cast<size_t>(w)] + 1;
        q.push_back(p);
      }
    }
  }
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const size_t vu = static_cast<size_t>(v);
    if (g.owner(v) != Owner::Follower) continue;
    NodeId pick = kNoNode;
    for (NodeId w : g.children(v)) {
      const size_t wu = static_cast<size_t>(w);
      if (dist[vu] >= 0) {
        if (same(vu, wu) && dist[wu] == dist[vu] - 1 && pick == kNoNode) pick = w;
      } else if (pick == kNoNode) {
        pick = w;
      }
    }
    r.move[vu] = pick;
  }
  return r;
}

/// The memoryless punishing profile as a single red state.
inline StrategyWithMemory punishing_strategy(const GameGraph& g) {
  MaxminTable t = compute_maxmin(g);
  PunishResponse pr = punish_response(g, t);
  StrategyWithMemory s;
  MemoryState red;
  red.is_red = true;
  red.label = "R";
  s.machine.states.push_back(red);
  s.machine.initial = 0;
  s.machine.red = 0;
  s.default_leader = t.punish;
  s.default_follower = pr.move;
  return s;
}

}  // namespace sse

#endif  // SSE_GRAPH_ANALYSIS_HPP
