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

// Strategy synthesis: expand the chosen root outcome through the labels and
// turn the resulting plan into a memory machine.

#ifndef SSE_DOWNWARD_HPP
#define SSE_DOWNWARD_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sse/graph_analysis.hpp"
#include "sse/strategy.hpp"
#include "sse/upward.hpp"

namespace sse {

/// One segment of the plan: the path walked under a single memory state
/// until a leaf or a randomizing leader node.
struct PlanSegment {
  int parent = -1;
  std::vector<Suggestion> suggestions;
  std::map<NodeId, Distribution> leader;
  std::map<std::pair<NodeId, NodeId>, int> transitions;  // leader move -> child segment
};

struct MixedPath {
  std::vector<PlanSegment> segments;  // segment 0 starts at the root
  std::set<std::pair<NodeId, NodeId>> edges;  // positive-probability edges
};

namespace detail {

struct Target {
  int piece = -1;
  std::map<int, Rational> mass;  // entry index -> probability
};

}  // namespace detail

inline MixedPath build_mixed_path(const GameGraph& g, const std::vector<CommitmentSet>& sets, const EntryRef& root) {
  MixedPath out;
  out.segments.emplace_back();
  struct Work {
    int seg;
    NodeId v;
    detail::Target t;
  };
  std::deque<Work> work;
  work.push_back({0, root.node, {root.piece, {{root.entry, Rational(1)}}}});
  while (!work.empty()) {
    Work w = std::move(work.front());
    work.pop_front();
    NodeId v = w.v;
    detail::Target t = std::move(w.t);
    while (!g.is_leaf(v)) {
      const Piece& piece = sets[static_cast<size_t>(v)].pieces.at(static_cast<size_t>(t.piece));
      std::map<NodeId, detail::Target> groups;
      for (const auto& [ei, m] : t.mass) {
        const Label& l = piece.entries.at(static_cast<size_t>(ei)).label;
        detail::Target& c = groups[l.child];
        c.piece = l.piece;
        c.mass[l.ref1] += m * l.alpha;
        if (l.is_mixed()) c.mass[l.ref2] += m * (1 - l.alpha);
      }
      for (auto g_it = groups.begin(); g_it != groups.end();) {
        auto& mass = g_it->second.mass;
        for (auto it = mass.begin(); it != mass.end();) it = it->second == 0 ? mass.erase(it) : std::next(it);
        g_it = mass.empty() ? groups.erase(g_it) : std::next(g_it);
      }
      PlanSegment& seg = out.segments[static_cast<size_t>(w.seg)];
      if (g.owner(v) == Owner::Follower) {
        NodeId child = groups.begin()->first;
        seg.suggestions.push_back({v, child});
        out.edges.insert({v, child});
        t = std::move(groups.begin()->second);
        v = child;
        continue;
      }
      if (groups.size() == 1) {
        NodeId child = groups.begin()->first;
        seg.leader[v] = {{child, Rational(1)}};
        out.edges.insert({v, child});
        t = std::move(groups.begin()->second);
        v = child;
        continue;
      }
      Distribution dist;
      std::vector<std::pair<NodeId, detail::Target>> branches;
      for (auto& [child, c] : groups) {
        Rational total = 0;
        for (const auto& [ei, m] : c.mass) total += m;
        for (auto& [ei, m] : c.mass) m /= total;
        dist.push_back({child, total});
        branches.push_back({child, std::move(c)});
      }
      out.segments[static_cast<size_t>(w.seg)].leader[v] = dist;
      for (auto& [child, c] : branches) {
        int id = static_cast<int>(out.segments.size());
        out.segments.emplace_back();
        out.segments.back().parent = w.seg;
        out.segments[static_cast<size_t>(w.seg)].transitions[{v, child}] = id;
        out.edges.insert({v, child});
        work.push_back({id, child, std::move(c)});
      }
      break;
    }
  }
  return out;
}

/// Follower nodes with exactly one positive-probability outgoing edge.
inline std::vector<Suggestion> initial_memory(const GameGraph& g, const MixedPath& path) {
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& [v, w] : path.edges)
    if (g.owner(v) == Owner::Follower) out[v].push_back(w);
  std::vector<Suggestion> m0;
  for (const auto& [v, ws] : out)
    if (ws.size() == 1) m0.push_back({v, ws.front()});
  return m0;
}

inline StateId memory_update(const GameGraph& g, const MemoryMachine& mm, StateId m, NodeId v, NodeId w) {
  return mm.update(g, m, v, w);
}

struct SynthesisResult {
  Outcome value;
  EntryRef root_entry;
  std::map<NodeId, Rational> leaf_distribution;
  StrategyWithMemory profile;
};

/// Hash-conses plan segments into memory states and appends the red state.
inline StrategyWithMemory machine_from_plan(const GameGraph& g, const MixedPath& path,
                                            const std::vector<Suggestion>& closure) {
  const size_t n = path.segments.size();
  std::vector<std::vector<Suggestion>> sugg(n);
  for (size_t s = 0; s < n; ++s) {
    std::set<Suggestion> acc(closure.begin(), closure.end());
    for (int c = static_cast<int>(s); c >= 0; c = path.segments[static_cast<size_t>(c)].parent)
      acc.insert(path.segments[static_cast<size_t>(c)].suggestions.begin(),
                 path.segments[static_cast<size_t>(c)].suggestions.end());
    sugg[s].assign(acc.begin(), acc.end());
  }
  std::vector<int> cls(n, -1);
  std::map<std::string, int> keys;
  for (size_t s = n; s-- > 0;) {
    std::ostringstream k;
    for (const auto& [a, b] : sugg[s]) k << a << '>' << b << ';';
    k << '|';
    for (const auto& [v, d] : path.segments[s].leader) {
      k << v << ':';
      for (const auto& [w, p] : d) k << w << '=' << p.get_str() << ',';
      k << ';';
    }
    k << '|';
    for (const auto& [e, c] : path.segments[s].transitions)
      k << e.first << '>' << e.second << '>' << cls[static_cast<size_t>(c)] << ';';
    auto [it, fresh] = keys.emplace(k.str(), static_cast<int>(keys.size()));
    cls[s] = it->second;
  }
  // Number classes in order of first appearance from the root.
  std::map<int, StateId> id_of;
  std::vector<size_t> rep;
  std::deque<size_t> q{0};
  while (!q.empty()) {
    size_t s = q.front();
    q.pop_front();
    if (id_of.count(cls[s])) continue;
    id_of[cls[s]] = static_cast<StateId>(rep.size());
    rep.push_back(s);
    for (const auto& [e, c] : path.segments[s].transitions) q.push_back(static_cast<size_t>(c));
  }
  StrategyWithMemory out = punishing_strategy(g);
  MemoryState red = out.machine.states.front();
  out.machine.states.clear();
  for (size_t i = 0; i < rep.size(); ++i) {
    size_t s = rep[i];
    MemoryState st;
    st.suggestions = sugg[s];
    st.label = "m" + std::to_string(i);
    out.machine.states.push_back(st);
    StateId m = static_cast<StateId>(i);
    for (const auto& [v, d] : path.segments[s].leader) out.leader[{m, v}] = d;
    for (const auto& [u, w] : sugg[s]) out.follower[{m, u}] = w;
    for (const auto& [e, c] : path.segments[s].transitions)
      out.machine.transitions[{m, e.first, e.second}] = id_of.at(cls[static_cast<size_t>(c)]);
  }
  out.machine.initial = 0;
  out.machine.red = static_cast<StateId>(out.machine.states.size());
  out.machine.states.push_back(red);
  return out;
}

/// Full exact pipeline on a chance-free DAG or tree.
inline SynthesisResult synthesize(const GameGraph& g, const UpwardResult& up) {
  SynthesisResult r;
  r.root_entry = select_root_outcome(g, up.sets);
  r.value = entry_at(up.sets, r.root_entry).point;
  r.leaf_distribution = leaf_mix(up.sets, r.root_entry);
  MixedPath path = build_mixed_path(g, up.sets, r.root_entry);
  r.profile = machine_from_plan(g, path, initial_memory(g, path));
  return r;
}

inline SynthesisResult solve_dag(const GameGraph& g) { return synthesize(g, upward_pass(g)); }

}  // namespace sse

#endif  // SSE_DOWNWARD_HPP
