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

#ifndef SSE_VERIFIER_HPP
#define SSE_VERIFIER_HPP

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sse/graph_analysis.hpp"
#include "sse/strategy.hpp"
#include "sse/upward.hpp"

namespace sse {

class NonTerminatingProfile : public std::runtime_error {
 public:
  NonTerminatingProfile() : std::runtime_error("profile has a positive-probability infinite play") {}
};

namespace detail {

/// Reachable part of the (node, memory) product.
struct Product {
  std::vector<std::pair<NodeId, StateId>> states;
  std::unordered_map<long long, int> index;
  // Successor (product index, probability); probability unused for follower nodes.
  std::vector<std::vector<std::pair<int, Rational>>> succ;
};

inline Product build_product(const GameGraph& g, const StrategyWithMemory& s, bool follower_all_moves) {
  Product p;
  const long long width = static_cast<long long>(s.machine.size()) + 1;
  auto get = [&](NodeId v, StateId m) {
    long long key = static_cast<long long>(v) * width + m;
    auto [it, fresh] = p.index.emplace(key, static_cast<int>(p.states.size()));
    if (fresh) {
      p.states.push_back({v, m});
      p.succ.emplace_back();
    }
    return std::pair<int, bool>{it->second, fresh};
  };
  std::deque<int> q{get(g.root(), s.machine.initial).first};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    auto [v, m] = p.states[static_cast<size_t>(x)];
    std::vector<std::pair<int, Rational>> out;
    auto add = [&](NodeId w, Rational pr) {
      auto [y, fresh] = get(w, s.machine.update(g, m, v, w));
      if (fresh) q.push_back(y);
      out.push_back({y, std::move(pr)});
    };
    const Node& nd = g.node(v);
    switch (nd.owner) {
      case Owner::Leaf:
        break;
      case Owner::Leader:
        for (const auto& [w, pr] : s.leader_dist(m, v))
          if (pr > 0) add(w, pr);
        break;
      case Owner::Follower:
        if (follower_all_moves) {
          for (NodeId w : nd.children) add(w, Rational(1));
        } else {
          add(s.follower_move(m, v), Rational(1));
        }
        break;
      case Owner::Chance:
        for (size_t i = 0; i < nd.children.size(); ++i)
          if (nd.probs[i] > 0) add(nd.children[i], nd.probs[i]);
        break;
    }
    p.succ[static_cast<size_t>(x)] = std::move(out);
  }
  return p;
}

}  // namespace detail

/// Expected payoffs of a profile, exactly.
inline Outcome evaluate(const GameGraph& g, const StrategyWithMemory& s) {
  detail::Product p = detail::build_product(g, s, false);
  std::vector<std::vector<NodeId>> succ(p.states.size());
  for (size_t x = 0; x < succ.size(); ++x)
    for (const auto& [y, pr] : p.succ[x]) succ[x].push_back(y);
  SccDag d = scc_condense(succ);
  std::vector<Outcome> val(p.states.size());
  for (int c : d.topo_order) {
    const auto& comp = d.components[static_cast<size_t>(c)];
    if (comp.size() > 1) throw NonTerminatingProfile();
    size_t x = static_cast<size_t>(comp.front());
    for (NodeId y : succ[x])
      if (static_cast<size_t>(y) == x) throw NonTerminatingProfile();
    NodeId v = p.states[x].first;
    if (g.is_leaf(v)) {
      val[x] = {g.node(v).u1, g.node(v).u2};
      continue;
    }
    Outcome o{0, 0};
    for (const auto& [y, pr] : p.succ[x]) {
      o.u1 += pr * val[static_cast<size_t>(y)].u1;
      o.u2 += pr * val[static_cast<size_t>(y)].u2;
    }
    val[x] = o;
  }
  return val[0];
}

struct BestResponse {
  Outcome value;
  std::map<std::pair<StateId, NodeId>, NodeId> moves;
};

/// Follower's lexicographic (u2, then leader's u1) best response against the
/// leader's part of a profile. Infinite play is worth (0, 0). Cycles in the
/// product are supported where the leader and chance are deterministic.
inline BestResponse best_response(const GameGraph& g, const StrategyWithMemory& s) {
  detail::Product p = detail::build_product(g, s, true);
  const size_t n = p.states.size();
  std::vector<std::vector<NodeId>> succ(n);
  for (size_t x = 0; x < n; ++x)
    for (const auto& [y, pr] : p.succ[x]) succ[x].push_back(y);
  SccDag d = scc_condense(succ);
  std::vector<Outcome> val(n);
  std::vector<int> pick(n, -1);
  auto lex_less = [](const Outcome& a, const Outcome& b) { return a.u2 != b.u2 ? a.u2 < b.u2 : a.u1 < b.u1; };
  for (int c : d.topo_order) {
    const auto& comp = d.components[static_cast<size_t>(c)];
    bool cyclic = comp.size() > 1;
    if (!cyclic)
      for (NodeId y : succ[static_cast<size_t>(comp.front())])
        if (y == comp.front()) cyclic = true;
    if (!cyclic) {
      size_t x = static_cast<size_t>(comp.front());
      NodeId v = p.states[x].first;
      const Node& nd = g.node(v);
      if (nd.owner == Owner::Leaf) {
        val[x] = {nd.u1, nd.u2};
      } else if (nd.owner == Owner::Follower) {
        for (NodeId y : succ[x])
          if (pick[x] < 0 || lex_less(val[static_cast<size_t>(pick[x])], val[static_cast<size_t>(y)])) pick[x] = y;
        val[x] = val[static_cast<size_t>(pick[x])];
      } else {
        Outcome o{0, 0};
        for (const auto& [y, pr] : p.succ[x]) {
          o.u1 += pr * val[static_cast<size_t>(y)].u1;
          o.u2 += pr * val[static_cast<size_t>(y)].u2;
        }
        val[x] = o;
      }
      continue;
    }
    // One-player component: the follower picks the best exit or stays forever.
    std::optional<Outcome> best;
    for (NodeId xi : comp) {
      size_t x = static_cast<size_t>(xi);
      NodeId v = p.states[x].first;
      if (g.owner(v) != Owner::Follower && succ[x].size() != 1)
        throw std::runtime_error("best response: randomization inside a cycle is not supported");
      for (NodeId y : succ[x])
        if (d.comp_of[static_cast<size_t>(y)] != c && g.owner(v) == Owner::Follower)
          if (!best || lex_less(*best, val[static_cast<size_t>(y)])) best = val[static_cast<size_t>(y)];
    }
    Outcome stay{0, 0};
    Outcome v_c = best && !lex_less(*best, stay) ? *best : stay;
    bool exit = best && !lex_less(*best, stay);
    for (NodeId xi : comp) val[static_cast<size_t>(xi)] = v_c;
    // Route to a best exit by backward search inside the component.
    std::deque<NodeId> q;
    std::map<NodeId, bool> seen;
    for (NodeId xi : comp) {
      size_t x = static_cast<size_t>(xi);
      if (!exit || g.owner(p.states[x].first) != Owner::Follower) continue;
      for (NodeId y : succ[x])
        if (d.comp_of[static_cast<size_t>(y)] != c && val[static_cast<size_t>(y)] == v_c && pick[x] < 0) {
          pick[x] = y;
          seen[xi] = true;
          q.push_back(xi);
        }
    }
    std::map<NodeId, std::vector<NodeId>> pred;
    for (NodeId xi : comp)
      for (NodeId y : succ[static_cast<size_t>(xi)])
        if (d.comp_of[static_cast<size_t>(y)] == c) pred[y].push_back(xi);
    while (!q.empty()) {
      NodeId y = q.front();
      q.pop_front();
      for (NodeId x : pred[y])
        if (!seen[x]) {
          seen[x] = true;
          if (g.owner(p.states[static_cast<size_t>(x)].first) == Owner::Follower) pick[static_cast<size_t>(x)] = y;
          q.push_back(x);
        }
    }
    for (NodeId xi : comp) {
      size_t x = static_cast<size_t>(xi);
      if (pick[x] < 0 && g.owner(p.states[x].first) == Owner::Follower)
        for (NodeId y : succ[x])
          if (d.comp_of[static_cast<size_t>(y)] == c) {
            pick[x] = y;
            break;
          }
    }
  }
  BestResponse br;
  br.value = val[0];
  for (size_t x = 0; x < n; ++x)
    if (pick[x] >= 0) br.moves[{p.states[x].second, p.states[x].first}] = p.states[static_cast<size_t>(pick[x])].first;
  return br;
}

/// Largest number of visits to a single node along any positive-probability
/// play. Enumerates plays, so meant for small games.
inline int max_node_visits(const GameGraph& g, const StrategyWithMemory& s) {
  detail::Product p = detail::build_product(g, s, false);
  std::vector<int> count(g.size(), 0);
  int best = 0;
  std::vector<std::pair<int, size_t>> st{{0, 0}};
  count[static_cast<size_t>(p.states[0].first)] = 1;
  best = 1;
  while (!st.empty()) {
    auto& [x, i] = st.back();
    const auto& out = p.succ[static_cast<size_t>(x)];
    if (i < out.size()) {
      int y = out[i++].first;
      int& c = ++count[static_cast<size_t>(p.states[static_cast<size_t>(y)].first)];
      best = std::max(best, c);
      if (c > static_cast<int>(g.size()) + 2) throw NonTerminatingProfile();
      st.push_back({y, 0});
    } else {
      --count[static_cast<size_t>(p.states[static_cast<size_t>(x)].first)];
      st.pop_back();
    }
  }
  return best;
}

struct CertificateReport {
  bool ok = false;
  Outcome evaluated;
  Outcome best_response;
  std::string reason;
};

/// A profile is certified when its evaluation matches the claim and the
/// follower has no strictly better reply; ties are broken for the leader.
inline CertificateReport check_certificate(const GameGraph& g, const StrategyWithMemory& s,
                                           const std::optional<Outcome>& claimed = std::nullopt) {
  CertificateReport r;
  try {
    r.evaluated = evaluate(g, s);
  } catch (const NonTerminatingProfile& e) {
    r.reason = e.what();
    return r;
  }
  r.best_response = best_response(g, s).value;
  if (claimed && !(*claimed == r.evaluated)) {
    r.reason = "evaluation differs from the claimed payoffs";
  } else if (r.best_response.u2 != r.evaluated.u2) {
    r.reason = "follower has a profitable deviation";
  } else if (r.best_response.u1 < r.evaluated.u1) {
    r.reason = "leader payoff below claim under the follower's tie-break";
  } else {
    r.ok = true;
  }
  return r;
}

}  // namespace sse

#endif  // SSE_VERIFIER_HPP
