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

// Reference solvers for small games, independent of the commitment-set code.

#ifndef SSE_ORACLE_HPP
#define SSE_ORACLE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sse/game.hpp"
#include "sse/upward.hpp"

namespace sse {

/// History tree of a DAG. Repeated visits get "<name>~<k>" names.
inline GameGraph unroll_to_tree(const GameGraph& g, size_t max_nodes = 1u << 20) {
  if (g.shape() == Shape::Cyclic) throw GameError(GameError::Kind::NotDag, "cannot unroll a cyclic game");
  GameBuilder b;
  std::map<NodeId, int> seen;
  size_t count = 0;
  std::function<std::string(NodeId)> copy = [&](NodeId v) {
    if (++count > max_nodes) throw GameError(GameError::Kind::Capability, "unrolled tree too large");
    int k = seen[v]++;
    const Node& nd = g.node(v);
    std::string name = k == 0 ? nd.name : nd.name + "~" + std::to_string(k);
    if (nd.owner == Owner::Leaf) {
      b.leaf(name, nd.u1, nd.u2);
      return name;
    }
    b.node(name, nd.owner);
    for (size_t i = 0; i < nd.children.size(); ++i) {
      std::string c = copy(nd.children[i]);
      if (nd.owner == Owner::Chance) b.edge(name, c, nd.probs[i]);
      else b.edge(name, c);
    }
    return name;
  };
  b.root(copy(g.root()));
  return b.build(nullptr);
}

namespace detail {

/// Points not weakly dominated by another point, each listed once.
inline std::vector<Outcome> pareto(std::vector<Outcome> pts) {
  std::sort(pts.begin(), pts.end(), [](const Outcome& a, const Outcome& b) {
    return a.u1 != b.u1 ? a.u1 > b.u1 : a.u2 > b.u2;
  });
  std::vector<Outcome> out;
  for (const auto& p : pts)
    if (out.empty() || p.u2 > out.back().u2) out.push_back(p);
  return out;
}

inline Outcome lex_best(const std::vector<Outcome>& pts) {
  Outcome best = pts.front();
  for (const auto& p : pts)
    if (p.u1 > best.u1 || (p.u1 == best.u1 && p.u2 > best.u2)) best = p;
  return best;
}

}  // namespace detail

/// Best outcome for the leader with full history, leader probabilities on
/// the grid k/resolution (plus `extra` weights). Handles chance nodes.
inline Outcome brute_force_sse(const GameGraph& g, int resolution, const std::vector<Rational>& extra = {}) {
  GameGraph t = g.shape() == Shape::Tree ? g : unroll_to_tree(g);
  std::set<Rational> weights(extra.begin(), extra.end());
  for (int k = 1; k < resolution; ++k) weights.insert(make_rational(k, resolution));
  const size_t n = t.size();
  std::vector<Rational> punish(n);
  std::vector<std::vector<Outcome>> set(n);
  std::function<void(NodeId)> solve = [&](NodeId v) {
    const Node& nd = t.node(v);
    const size_t vu = static_cast<size_t>(v);
    for (NodeId w : nd.children) solve(w);
    std::vector<Outcome> pts;
    switch (nd.owner) {
      case Owner::Leaf:
        punish[vu] = nd.u2;
        pts.push_back({nd.u1, nd.u2});
        break;
      case Owner::Leader: {
        punish[vu] = punish[static_cast<size_t>(nd.children.front())];
        for (NodeId w : nd.children) {
          punish[vu] = std::min(punish[vu], punish[static_cast<size_t>(w)]);
          for (const auto& p : set[static_cast<size_t>(w)]) pts.push_back(p);
        }
        for (size_t a = 0; a < nd.children.size(); ++a)
          for (size_t b = a + 1; b < nd.children.size(); ++b)
            for (const auto& p : set[static_cast<size_t>(nd.children[a])])
              for (const auto& q : set[static_cast<size_t>(nd.children[b])])
                for (const auto& l : weights)
                  pts.push_back({l * p.u1 + (1 - l) * q.u1, l * p.u2 + (1 - l) * q.u2});
        break;
      }
      case Owner::Follower: {
        punish[vu] = punish[static_cast<size_t>(nd.children.front())];
        for (NodeId w : nd.children) punish[vu] = std::max(punish[vu], punish[static_cast<size_t>(w)]);
        for (NodeId w : nd.children) {
          bool has = false;
          Rational th;
          for (NodeId s : nd.children)
            if (s != w && (!has || punish[static_cast<size_t>(s)] > th)) {
              th = punish[static_cast<size_t>(s)];
              has = true;
            }
          for (const auto& p : set[static_cast<size_t>(w)])
            if (!has || p.u2 >= th) pts.push_back(p);
        }
        break;
      }
      case Owner::Chance: {
        punish[vu] = 0;
        std::vector<Outcome> acc{{0, 0}};
        for (size_t i = 0; i < nd.children.size(); ++i) {
          const Rational& pr = nd.probs[i];
          punish[vu] += pr * punish[static_cast<size_t>(nd.children[i])];
          std::vector<Outcome> next;
          for (const auto& s : acc)
            for (const auto& x : set[static_cast<size_t>(nd.children[i])])
              next.push_back({s.u1 + pr * x.u1, s.u2 + pr * x.u2});
          acc = detail::pareto(std::move(next));
        }
        pts = std::move(acc);
        break;
      }
    }
    set[vu] = detail::pareto(std::move(pts));
    for (NodeId w : nd.children) std::vector<Outcome>().swap(set[static_cast<size_t>(w)]);
  };
  solve(t.root());
  const auto& root = set[static_cast<size_t>(t.root())];
  if (root.empty()) throw NoCommitment();
  return detail::lex_best(root);
}

/// Best history-independent commitment on a DAG: every leader node plays a
/// fixed distribution on the grid k/resolution (resolution 1 = pure), the
/// follower best-responds lexicographically on (u2, u1).
inline Outcome best_memoryless(const GameGraph& g, int resolution, size_t max_profiles = 5'000'000) {
  if (g.shape() == Shape::Cyclic) throw GameError(GameError::Kind::NotDag, "memoryless search needs a DAG");
  std::vector<NodeId> leaders;
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v)
    if (g.owner(v) == Owner::Leader) leaders.push_back(v);
  // All distributions with weights k/resolution over each leader's children.
  std::vector<std::vector<std::vector<Rational>>> options;
  size_t total = 1;
  for (NodeId v : leaders) {
    size_t k = g.children(v).size();
    std::vector<std::vector<Rational>> opts;
    std::vector<int> parts(k, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
      if (i + 1 == k) {
        parts[i] = left;
        std::vector<Rational> d;
        for (int p : parts) d.push_back(make_rational(p, resolution));
        opts.push_back(d);
        return;
      }
      for (int p = 0; p <= left; ++p) {
        parts[i] = p;
        rec(i + 1, left - p);
      }
    };
    rec(0, resolution);
    total *= opts.size();
    if (total > max_profiles) throw GameError(GameError::Kind::Capability, "too many memoryless profiles");
    options.push_back(std::move(opts));
  }
  // Children before parents.
  std::vector<NodeId> order;
  std::vector<int> state(g.size(), 0);
  std::function<void(NodeId)> visit = [&](NodeId v) {
    if (state[static_cast<size_t>(v)]) return;
    state[static_cast<size_t>(v)] = 1;
    for (NodeId w : g.children(v)) visit(w);
    order.push_back(v);
  };
  visit(g.root());
  std::vector<size_t> choice(leaders.size(), 0);
  std::map<NodeId, size_t> leader_index;
  for (size_t i = 0; i < leaders.size(); ++i) leader_index[leaders[i]] = i;
  std::vector<Outcome> val(g.size());
  bool have = false;
  Outcome best;
  while (true) {
    for (NodeId v : order) {
      const Node& nd = g.node(v);
      Outcome o{0, 0};
      if (nd.owner == Owner::Leaf) {
        o = {nd.u1, nd.u2};
      } else if (nd.owner == Owner::Follower) {
        o = val[static_cast<size_t>(nd.children.front())];
        for (NodeId w : nd.children) {
          const Outcome& c = val[static_cast<size_t>(w)];
          if (c.u2 > o.u2 || (c.u2 == o.u2 && c.u1 > o.u1)) o = c;
        }
      } else {
        size_t li = nd.owner == Owner::Leader ? leader_index.at(v) : 0;
        for (size_t i = 0; i < nd.children.size(); ++i) {
          const Rational& p = nd.owner == Owner::Leader ? options[li][choice[li]][i] : nd.probs[i];
          o.u1 += p * val[static_cast<size_t>(nd.children[i])].u1;
          o.u2 += p * val[static_cast<size_t>(nd.children[i])].u2;
        }
      }
      val[static_cast<size_t>(v)] = o;
    }
    const Outcome& r = val[static_cast<size_t>(g.root())];
    if (!have || r.u1 > best.u1 || (r.u1 == best.u1 && r.u2 > best.u2)) best = r;
    have = true;
    size_t i = 0;
    while (i < choice.size() && ++choice[i] == options[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return best;
}

}  // namespace sse

#endif  // SSE_ORACLE_HPP
