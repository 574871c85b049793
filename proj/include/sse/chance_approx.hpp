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

// Approximate commitments for games with chance nodes. On a binary DAG every
// node keeps a row A_v[k]: the best follower payoff compatible with the
// leader securing at least k, for k on a grid of step delta.

#ifndef SSE_CHANCE_APPROX_HPP
#define SSE_CHANCE_APPROX_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sse/graph_analysis.hpp"
#include "sse/strategy.hpp"
#include "sse/transform.hpp"
#include "sse/upward.hpp"

namespace sse {

using Row = std::vector<Extended>;

struct ValueGrid {
  Rational u_low, u_high, step;
  std::vector<Rational> ks;
  std::vector<Row> A;  // per node

  int size() const { return static_cast<int>(ks.size()); }
  /// Smallest grid index t with ks[t] >= x, or size() if none.
  int ceil_index(const Rational& x) const {
    if (x <= u_low) return 0;
    Rational q = (x - u_low) / step;
    mpz_class c = q.get_num() / q.get_den();
    if (Rational(c) < q) c += 1;
    return c > size() ? size() : static_cast<int>(c.get_si());
  }
};

/// How a row entry is realized one level down.
struct Choice {
  enum class Kind { None, Leaf, Copy, Pick, Split, Route };
  Kind kind = Kind::None;
  NodeId child = kNoNode;  // Copy / Pick
  Rational p = 1;          // Split / Route: probability of the first child
  int i = -1, j = -1;      // grid targets below the first and second child
  NodeId w = kNoNode;      // Route: follower node steered by the leader's draw
};

using ChoiceRow = std::vector<Choice>;

inline ValueGrid grid_init(const GameGraph& b, const Rational& epsilon) {
  if (epsilon <= 0) throw GameError(GameError::Kind::Capability, "epsilon must be positive");
  for (const auto& n : b.nodes())
    if (n.children.size() > 2) throw GameError(GameError::Kind::Capability, "grid needs a binary DAG");
  ValueGrid g;
  bool first = true;
  for (NodeId l : b.leaves()) {
    const Rational& u = b.node(l).u1;
    if (first || u < g.u_low) g.u_low = u;
    if (first || u > g.u_high) g.u_high = u;
    first = false;
  }
  g.step = epsilon;
  for (Rational k = g.u_low; k <= g.u_high; k += epsilon) g.ks.push_back(k);
  g.A.assign(b.size(), Row(g.ks.size(), Extended::neg_inf()));
  return g;
}

inline Row leaf_row(const GameGraph& b, NodeId v, const ValueGrid& grid) {
  Row r(grid.ks.size());
  for (size_t t = 0; t < r.size(); ++t)
    r[t] = grid.ks[t] <= b.node(v).u1 ? Extended(b.node(v).u2) : Extended::neg_inf();
  return r;
}

/// Exhaustive pairs; reference for chance_row.
inline Row chance_row_naive(const GameGraph& b, NodeId v, const ValueGrid& grid, ChoiceRow* choices = nullptr) {
  const auto& ch = b.children(v);
  const int n = grid.size();
  Row r(static_cast<size_t>(n), Extended::neg_inf());
  if (choices) choices->assign(static_cast<size_t>(n), Choice{});
  if (ch.size() == 1) {
    r = grid.A[static_cast<size_t>(ch[0])];
    if (choices)
      for (auto& c : *choices) c = {Choice::Kind::Copy, ch[0]};
    return r;
  }
  const Rational& p = b.node(v).probs[0];
  const Row& L = grid.A[static_cast<size_t>(ch[0])];
  const Row& R = grid.A[static_cast<size_t>(ch[1])];
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (L[static_cast<size_t>(i)].is_neg_inf() || R[static_cast<size_t>(j)].is_neg_inf()) continue;
        if (p * grid.ks[static_cast<size_t>(i)] + (1 - p) * grid.ks[static_cast<size_t>(j)] < grid.ks[static_cast<size_t>(t)])
          continue;
        Extended val(p * L[static_cast<size_t>(i)].value() + (1 - p) * R[static_cast<size_t>(j)].value());
        if (r[static_cast<size_t>(t)] < val) {
          r[static_cast<size_t>(t)] = val;
          if (choices) (*choices)[static_cast<size_t>(t)] = {Choice::Kind::Split, kNoNode, p, i, j};
        }
      }
  return r;
}

/// Rows are non-increasing, so for each i the smallest feasible j is best.
inline Row chance_row(const GameGraph& b, NodeId v, const ValueGrid& grid, ChoiceRow* choices = nullptr) {
  const auto& ch = b.children(v);
  if (ch.size() == 1) return chance_row_naive(b, v, grid, choices);
  const int n = grid.size();
  Row r(static_cast<size_t>(n), Extended::neg_inf());
  if (choices) choices->assign(static_cast<size_t>(n), Choice{});
  const Rational& p = b.node(v).probs[0];
  const Row& L = grid.A[static_cast<size_t>(ch[0])];
  const Row& R = grid.A[static_cast<size_t>(ch[1])];
  for (int t = 0; t < n; ++t) {
    const Rational& k = grid.ks[static_cast<size_t>(t)];
    for (int i = 0; i < n; ++i) {
      if (L[static_cast<size_t>(i)].is_neg_inf()) break;
      int j;
      if (p == 1) {
        if (grid.ks[static_cast<size_t>(i)] < k) continue;
        j = 0;
      } else {
        j = grid.ceil_index((k - p * grid.ks[static_cast<size_t>(i)]) / (1 - p));
      }
      if (j >= n || R[static_cast<size_t>(j)].is_neg_inf()) continue;
      Extended val(p * L[static_cast<size_t>(i)].value() + (1 - p) * R[static_cast<size_t>(j)].value());
      if (r[static_cast<size_t>(t)] < val) {
        r[static_cast<size_t>(t)] = val;
        if (choices) (*choices)[static_cast<size_t>(t)] = {Choice::Kind::Split, kNoNode, p, i, j};
      }
    }
  }
  return r;
}

/// A child is viable at k when its row beats what the follower secures by
/// leaving for the sibling.
inline Row follower_row(const GameGraph& b, NodeId v, const ValueGrid& grid, const MaxminTable& mm,
                        ChoiceRow* choices = nullptr) {
  const auto& ch = b.children(v);
  const int n = grid.size();
  Row r(static_cast<size_t>(n), Extended::neg_inf());
  if (choices) choices->assign(static_cast<size_t>(n), Choice{});
  for (int t = 0; t < n; ++t) {
    for (size_t c = 0; c < ch.size(); ++c) {
      const Extended& a = grid.A[static_cast<size_t>(ch[c])][static_cast<size_t>(t)];
      if (a.is_neg_inf()) continue;
      bool viable = true;
      for (size_t s = 0; s < ch.size(); ++s)
        if (s != c && a.value() < mm.mu2[static_cast<size_t>(ch[s])]) viable = false;
      if (viable && r[static_cast<size_t>(t)] < a) {
        r[static_cast<size_t>(t)] = a;
        if (choices) (*choices)[static_cast<size_t>(t)] = {ch.size() == 1 ? Choice::Kind::Copy : Choice::Kind::Pick, ch[c]};
      }
    }
  }
  return r;
}

/// Ancestors of w (w included).
inline std::vector<bool> ancestors_of(const GameGraph& b, NodeId w) {
  std::vector<std::vector<NodeId>> pred(b.size());
  for (NodeId x = 0; x < static_cast<NodeId>(b.size()); ++x)
    for (NodeId y : b.children(x)) pred[static_cast<size_t>(y)].push_back(x);
  std::vector<bool> in(b.size(), false);
  std::vector<NodeId> st{w};
  in[static_cast<size_t>(w)] = true;
  while (!st.empty()) {
    NodeId y = st.back();
    st.pop_back();
    for (NodeId x : pred[static_cast<size_t>(y)])
      if (!in[static_cast<size_t>(x)]) {
        in[static_cast<size_t>(x)] = true;
        st.push_back(x);
      }
  }
  return in;
}

/// Can a draw at leader node v steer play into follower node w while the
/// follower nets U there? Restricts the game to ancestors of w, gives each
/// follower node an exit worth its best excluded option, and checks that
/// the guaranteed follower payoff at v and both its children equals U.
inline bool achievable(const GameGraph& b, const MaxminTable& mm, NodeId v, NodeId w, const Rational& U) {
  std::vector<bool> in = ancestors_of(b, w);
  if (!in[static_cast<size_t>(v)] || v == w) return false;
  if (b.children(v).size() != 2) return false;
  std::vector<Rational> hat(b.size());
  for (NodeId x : reverse_topo_order(b)) {
    const size_t xu = static_cast<size_t>(x);
    if (!in[xu]) continue;
    if (x == w) {
      hat[xu] = U;
      continue;
    }
    const Node& nd = b.node(x);
    bool have = false;
    Rational acc = 0;
    std::optional<Rational> exit;
    for (size_t c = 0; c < nd.children.size(); ++c) {
      const size_t yu = static_cast<size_t>(nd.children[c]);
      if (nd.owner == Owner::Chance) {
        acc += nd.probs[c] * (in[yu] ? hat[yu] : mm.mu2[yu]);
        have = true;
        continue;
      }
      if (!in[yu]) {
        if (nd.owner == Owner::Follower && (!exit || mm.mu2[yu] > *exit)) exit = mm.mu2[yu];
        continue;
      }
      if (!have) acc = hat[yu];
      else if (nd.owner == Owner::Leader) acc = std::min(acc, hat[yu]);
      else acc = std::max(acc, hat[yu]);
      have = true;
    }
    if (exit) acc = have ? std::max(acc, *exit) : *exit;
    hat[xu] = acc;
  }
  const auto& ch = b.children(v);
  for (NodeId y : ch)
    if (!in[static_cast<size_t>(y)]) return false;
  return hat[static_cast<size_t>(v)] == U && hat[static_cast<size_t>(ch[0])] == U && hat[static_cast<size_t>(ch[1])] == U;
}

namespace detail {

struct Split {
  Extended value;
  Rational p = 1;
  int i = -1, j = -1;
};

/// Best p * L[i] + (1 - p) * R[j] over grid pairs and free p with
/// p * k_i + (1 - p) * k_j >= k_t; only rows meeting the floors qualify.
inline Split best_split(const Row& L, const Row& R, const ValueGrid& grid, int t, const Extended& floor_l,
                        const Extended& floor_r) {
  const int n = grid.size();
  const Rational& k = grid.ks[static_cast<size_t>(t)];
  auto ok_l = [&](int i) { return L[static_cast<size_t>(i)].is_finite() && floor_l <= L[static_cast<size_t>(i)]; };
  auto ok_r = [&](int j) { return R[static_cast<size_t>(j)].is_finite() && floor_r <= R[static_cast<size_t>(j)]; };
  Split best;
  auto offer = [&](const Rational& p, int i, int j) {
    Rational v = 0;
    if (p != 0) v += p * L[static_cast<size_t>(i)].value();
    if (p != 1) v += (1 - p) * R[static_cast<size_t>(j)].value();
    if (best.value < Extended(v)) best = {Extended(v), p, i, j};
  };
  for (int i = t; i < n; ++i)
    if (ok_l(i)) {
      offer(Rational(1), i, 0);
      break;
    }
  for (int j = t; j < n; ++j)
    if (ok_r(j)) {
      offer(Rational(0), 0, j);
      break;
    }
  for (int i = 0; i < n; ++i) {
    if (!ok_l(i)) continue;
    for (int j = 0; j < n; ++j) {
      if (!ok_r(j)) continue;
      const Rational& ki = grid.ks[static_cast<size_t>(i)];
      const Rational& kj = grid.ks[static_cast<size_t>(j)];
      if ((ki > k && kj < k) || (ki < k && kj > k)) offer((k - kj) / (ki - kj), i, j);
    }
  }
  return best;
}

/// Deterministic steering from a child of v into w inside the ancestor set
/// of w. Returns false when a chance node could leave it.
struct Route {
  std::map<NodeId, NodeId> next;  // leader and follower nodes on the route
  Extended floor = Extended::neg_inf();  // follower's best exit along the way
};

inline bool plan_route(const GameGraph& b, const MaxminTable& mm, const std::vector<bool>& in, NodeId start,
                       NodeId w, Route& r) {
  std::vector<NodeId> st{start};
  std::set<NodeId> seen{start};
  while (!st.empty()) {
    NodeId x = st.back();
    st.pop_back();
    if (x == w) continue;
    const Node& nd = b.node(x);
    std::vector<NodeId> go;
    if (nd.owner == Owner::Chance) {
      for (NodeId y : nd.children) {
        if (!in[static_cast<size_t>(y)]) return false;
        go.push_back(y);
      }
    } else {
      NodeId pick = kNoNode;
      for (NodeId y : nd.children)
        if (in[static_cast<size_t>(y)]) {
          pick = y;
          break;
        }
      if (pick == kNoNode) return false;
      r.next[x] = pick;
      go.push_back(pick);
      if (nd.owner == Owner::Follower)
        for (NodeId y : nd.children)
          if (y != pick) r.floor = max(r.floor, Extended(mm.mu2[static_cast<size_t>(y)]));
    }
    for (NodeId y : go)
      if (seen.insert(y).second) st.push_back(y);
  }
  return true;
}

inline std::vector<bool> descendants_of(const GameGraph& b, NodeId v) {
  std::vector<bool> out(b.size(), false);
  std::vector<NodeId> st{v};
  while (!st.empty()) {
    NodeId x = st.back();
    st.pop_back();
    for (NodeId y : b.children(x))
      if (!out[static_cast<size_t>(y)]) {
        out[static_cast<size_t>(y)] = true;
        st.push_back(y);
      }
  }
  return out;
}

/// Makes a row non-increasing: securing k' also secures every k <= k'.
inline void close_row(Row& r, ChoiceRow& c) {
  for (size_t t = r.size(); t-- > 1;)
    if (r[t - 1] < r[t]) {
      r[t - 1] = r[t];
      c[t - 1] = c[t];
    }
}

}  // namespace detail

/// X: the leader randomizes at v between its children. Y: the draw at v is
/// also a recommendation for a follower node w further down.
inline Row leader_row(const GameGraph& b, NodeId v, const ValueGrid& grid, const MaxminTable& mm,
                      ChoiceRow* choices = nullptr) {
  const auto& ch = b.children(v);
  const int n = grid.size();
  Row r(static_cast<size_t>(n), Extended::neg_inf());
  ChoiceRow local(static_cast<size_t>(n));
  if (ch.size() == 1) {
    r = grid.A[static_cast<size_t>(ch[0])];
    for (auto& c : local) c = {Choice::Kind::Copy, ch[0]};
    if (choices) *choices = local;
    return r;
  }
  const Row& L = grid.A[static_cast<size_t>(ch[0])];
  const Row& R = grid.A[static_cast<size_t>(ch[1])];
  const Extended none = Extended::neg_inf();
  for (int t = 0; t < n; ++t) {
    detail::Split s = detail::best_split(L, R, grid, t, none, none);
    if (s.value.is_neg_inf()) continue;
    r[static_cast<size_t>(t)] = s.value;
    local[static_cast<size_t>(t)] = {Choice::Kind::Split, kNoNode, s.p, s.i, s.j};
  }
  const Row x_row = r;
  std::vector<bool> below = detail::descendants_of(b, v);
  for (NodeId w = 0; w < static_cast<NodeId>(b.size()); ++w) {
    if (!below[static_cast<size_t>(w)] || b.owner(w) != Owner::Follower || b.children(w).size() != 2) continue;
    std::vector<bool> in = ancestors_of(b, w);
    detail::Route rl, rr;
    if (!in[static_cast<size_t>(ch[0])] || !in[static_cast<size_t>(ch[1])]) continue;
    if (!detail::plan_route(b, mm, in, ch[0], w, rl) || !detail::plan_route(b, mm, in, ch[1], w, rr)) continue;
    const auto& wc = b.children(w);
    Extended floor_l = max(rl.floor, Extended(mm.mu2[static_cast<size_t>(wc[1])]));
    Extended floor_r = max(rr.floor, Extended(mm.mu2[static_cast<size_t>(wc[0])]));
    for (int t = 0; t < n; ++t) {
      const Extended& x = x_row[static_cast<size_t>(t)];
      if (x.is_neg_inf()) continue;
      if (!achievable(b, mm, v, w, x.value())) continue;
      detail::Split s = detail::best_split(grid.A[static_cast<size_t>(wc[0])], grid.A[static_cast<size_t>(wc[1])],
                                           grid, t, floor_l, floor_r);
      if (s.value.is_neg_inf() || s.p == 0 || s.p == 1 || !(r[static_cast<size_t>(t)] < s.value)) continue;
      r[static_cast<size_t>(t)] = s.value;
      local[static_cast<size_t>(t)] = {Choice::Kind::Route, kNoNode, s.p, s.i, s.j, w};
    }
  }
  detail::close_row(r, local);
  if (choices) *choices = local;
  return r;
}

struct ApproxResult {
  BinaryDag binary;
  MaxminTable maxmin;
  ValueGrid grid;
  std::vector<ChoiceRow> choices;
  int bound_index = -1;
  Rational bound;           // leader payoff secured
  Rational follower_value;  // A_root at the bound
  StrategyWithMemory binary_profile;
  StrategyWithMemory profile;  // on the input game
};

namespace detail {

/// Profile on the binary game: one memory state per grid target, one per
/// steering route, and the red state last.
inline StrategyWithMemory grid_profile(const GameGraph& b, const MaxminTable& mm, const ValueGrid& grid,
                                       const std::vector<ChoiceRow>& choices, int start) {
  StrategyWithMemory s = punishing_strategy(b);
  MemoryState red = s.machine.states.front();
  s.machine.states.clear();
  const int n = grid.size();
  for (int t = 0; t < n; ++t) {
    MemoryState st;
    st.label = "k=" + to_string(grid.ks[static_cast<size_t>(t)]);
    s.machine.states.push_back(st);
  }
  std::map<std::tuple<NodeId, NodeId, int, int>, StateId> routes;
  auto route_state = [&](NodeId v, NodeId w, int side, int target) {
    auto key = std::make_tuple(v, w, side, target);
    if (auto it = routes.find(key); it != routes.end()) return it->second;
    StateId id = static_cast<StateId>(s.machine.states.size());
    routes[key] = id;
    std::vector<bool> in = ancestors_of(b, w);
    Route r;
    plan_route(b, mm, in, b.children(v)[static_cast<size_t>(side)], w, r);
    MemoryState st;
    st.label = "route:" + b.node(v).name + ">" + b.node(w).name + (side == 0 ? "/L" : "/R");
    NodeId out = b.children(w)[static_cast<size_t>(side)];
    for (const auto& [x, y] : r.next) {
      if (b.owner(x) == Owner::Follower) st.suggestions.push_back({x, y});
      else s.leader[{id, x}] = {{y, Rational(1)}};
    }
    st.suggestions.push_back({w, out});
    std::sort(st.suggestions.begin(), st.suggestions.end());
    s.machine.states.push_back(st);
    if (target != id) s.machine.transitions[{id, w, out}] = target;
    return id;
  };
  for (int t = 0; t < n; ++t) {
    for (NodeId x = 0; x < static_cast<NodeId>(b.size()); ++x) {
      if (grid.A[static_cast<size_t>(x)][static_cast<size_t>(t)].is_neg_inf()) continue;
      const Choice& c = choices[static_cast<size_t>(x)][static_cast<size_t>(t)];
      const auto& ch = b.children(x);
      auto branch = [&](NodeId child, int target) {
        if (target != t) s.machine.transitions[{t, x, child}] = target;
      };
      switch (b.owner(x)) {
        case Owner::Leaf:
          break;
        case Owner::Follower:
          s.machine.states[static_cast<size_t>(t)].suggestions.push_back({x, c.child});
          break;
        case Owner::Chance:
          if (c.kind == Choice::Kind::Split) {
            branch(ch[0], c.i);
            branch(ch[1], c.j);
          }
          break;
        case Owner::Leader:
          if (c.kind == Choice::Kind::Copy) {
            s.leader[{t, x}] = {{c.child, Rational(1)}};
            break;
          }
          Distribution d;
          if (c.p != 0) d.push_back({ch[0], c.p});
          if (c.p != 1) d.push_back({ch[1], 1 - c.p});
          s.leader[{t, x}] = d;
          if (c.kind == Choice::Kind::Split) {
            if (c.p != 0) branch(ch[0], c.i);
            if (c.p != 1) branch(ch[1], c.j);
          } else {
            s.machine.transitions[{t, x, ch[0]}] = route_state(x, c.w, 0, c.i);
            s.machine.transitions[{t, x, ch[1]}] = route_state(x, c.w, 1, c.j);
          }
          break;
      }
    }
    auto& sg = s.machine.states[static_cast<size_t>(t)].suggestions;
    std::sort(sg.begin(), sg.end());
  }
  s.machine.initial = start;
  s.machine.red = static_cast<StateId>(s.machine.states.size());
  s.machine.states.push_back(red);
  return s;
}

/// Collapses auxiliary nodes: a move v -> c in the input game is the chain
/// of binary moves from v to c, with probabilities multiplied and memory
/// updates composed.
inline StrategyWithMemory project_profile(const GameGraph& g, const BinaryDag& bin, const StrategyWithMemory& sb) {
  const GameGraph& b = bin.game;
  const NodeId n_orig = static_cast<NodeId>(g.size());
  StrategyWithMemory out = punishing_strategy(g);
  out.machine.states = sb.machine.states;
  out.machine.initial = sb.machine.initial;
  out.machine.red = sb.machine.red;
  for (auto& st : out.machine.states) st.suggestions.clear();
  struct Arrival {
    NodeId child;
    Rational prob;
    StateId state;
    bool suggested;
  };
  for (StateId m = 0; m < static_cast<StateId>(sb.machine.size()); ++m) {
    if (m == sb.machine.red) continue;
    for (NodeId v = 0; v < n_orig; ++v) {
      if (g.is_leaf(v)) continue;
      std::vector<Arrival> arr;
      std::vector<Arrival> st{{v, Rational(1), m, true}};
      bool explicit_leader = false;
      while (!st.empty()) {
        Arrival a = st.back();
        st.pop_back();
        if (a.child != v && a.child < n_orig) {
          arr.push_back(a);
          continue;
        }
        NodeId x = a.child;
        switch (b.owner(x)) {
          case Owner::Leader: {
            if (sb.leader.count({a.state, x})) explicit_leader = true;
            for (const auto& [y, p] : sb.leader_dist(a.state, x))
              if (p > 0) st.push_back({y, a.prob * p, sb.machine.update(b, a.state, x, y), a.suggested});
            break;
          }
          case Owner::Follower: {
            auto sug = sb.machine.states.at(static_cast<size_t>(a.state)).suggestion(x);
            NodeId y = sb.follower_move(a.state, x);
            st.push_back({y, a.prob, sb.machine.update(b, a.state, x, y), a.suggested && sug.has_value()});
            break;
          }
          case Owner::Chance: {
            const auto& ch = b.children(x);
            for (size_t i = 0; i < ch.size(); ++i)
              st.push_back({ch[i], a.prob * b.node(x).probs[i], sb.machine.update(b, a.state, x, ch[i]), a.suggested});
            break;
          }
          case Owner::Leaf:
            break;
        }
      }
      std::sort(arr.begin(), arr.end(), [](const Arrival& a, const Arrival& c) { return a.child < c.child; });
      for (const auto& a : arr)
        if (a.state != m && a.prob > 0) out.machine.transitions[{m, v, a.child}] = a.state;
      if (g.owner(v) == Owner::Leader && explicit_leader) {
        Distribution d;
        for (const auto& a : arr)
          if (a.prob > 0) d.push_back({a.child, a.prob});
        out.leader[{m, v}] = d;
      } else if (g.owner(v) == Owner::Follower && arr.size() == 1 && arr.front().suggested) {
        out.machine.states[static_cast<size_t>(m)].suggestions.push_back({v, arr.front().child});
        out.follower[{m, v}] = arr.front().child;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Rows for every node of the binary game, children first.
inline void fill_rows(const GameGraph& b, const MaxminTable& mm, ValueGrid& grid, std::vector<ChoiceRow>& choices) {
  choices.assign(b.size(), ChoiceRow{});
  for (NodeId v : reverse_topo_order(b)) {
    const size_t vu = static_cast<size_t>(v);
    switch (b.owner(v)) {
      case Owner::Leaf:
        grid.A[vu] = leaf_row(b, v, grid);
        choices[vu].assign(grid.ks.size(), Choice{Choice::Kind::Leaf});
        break;
      case Owner::Chance: grid.A[vu] = chance_row(b, v, grid, &choices[vu]); break;
      case Owner::Follower: grid.A[vu] = follower_row(b, v, grid, mm, &choices[vu]); break;
      case Owner::Leader: grid.A[vu] = leader_row(b, v, grid, mm, &choices[vu]); break;
    }
  }
}

/// Leader payoff bound on the grid and a profile securing it.
inline ApproxResult approx_solve(const GameGraph& g, const Rational& epsilon) {
  if (g.shape() == Shape::Cyclic)
    throw GameError(GameError::Kind::Capability, "chance approximation needs an acyclic game");
  if (epsilon <= 0) throw GameError(GameError::Kind::Capability, "epsilon must be positive");
  ApproxResult r;
  r.binary = to_binary_dag(g);
  const GameGraph& b = r.binary.game;
  r.maxmin = compute_maxmin(b);
  r.grid = grid_init(b, epsilon);
  fill_rows(b, r.maxmin, r.grid, r.choices);
  const Row& root = r.grid.A[static_cast<size_t>(b.root())];
  for (int t = 0; t < r.grid.size(); ++t)
    if (root[static_cast<size_t>(t)].is_finite()) r.bound_index = t;
  if (r.bound_index < 0) throw NoCommitment();
  r.bound = r.grid.ks[static_cast<size_t>(r.bound_index)];
  r.follower_value = root[static_cast<size_t>(r.bound_index)].value();
  r.binary_profile = detail::grid_profile(b, r.maxmin, r.grid, r.choices, r.bound_index);
  r.profile = detail::project_profile(g, r.binary, r.binary_profile);
  return r;
}

/// Grid of `cells` equal steps between the extreme leader payoffs.
inline Rational epsilon_for_cells(const GameGraph& g, int cells) {
  Rational lo, hi;
  bool first = true;
  for (NodeId l : g.leaves()) {
    const Rational& u = g.node(l).u1;
    if (first || u < lo) lo = u;
    if (first || u > hi) hi = u;
    first = false;
  }
  if (hi == lo || cells <= 0) return Rational(1);
  return (hi - lo) / cells;
}

}  // namespace sse

#endif  // SSE_CHANCE_APPROX_HPP
