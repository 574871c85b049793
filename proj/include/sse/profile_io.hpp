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

// JSON encodings. Rationals are strings ("3/2"); nodes are referenced by
// name and memory states by index.
//
// Profile:
//   {"schema": "sse-profile/1",
//    "initial": 0, "red": 3,
//    "states": [{"id": 0, "label": "m0", "red": false, "phase": 0,
//                "suggestions": [["v0", "v2"], ...]}, ...],
//    "transitions": [{"state": 0, "node": "v2", "child": "v3", "next": 1}, ...],
//    "leader": [{"state": 0, "node": "v2", "dist": [["v3", "1/2"], ["v4", "1/2"]]}, ...],
//    "follower": [{"state": 0, "node": "v0", "move": "v2"}, ...],
//    "defaults": {"leader": [["v6", "l2"], ...], "follower": [["v5", "v6"], ...]}}

#ifndef SSE_PROFILE_IO_HPP
#define SSE_PROFILE_IO_HPP

#include <string>
#include <utility>

#include <json.hpp>

#include "sse/chance_approx.hpp"
#include "sse/strategy.hpp"
#include "sse/upward.hpp"

namespace sse {

using Json = nlohmann::ordered_json;

inline Json outcome_json(const Outcome& o) {
  return {{"leader", to_string(o.u1)},
          {"follower", to_string(o.u2)},
          {"leader_decimal", to_decimal(o.u1)},
          {"follower_decimal", to_decimal(o.u2)}};
}

inline Json profile_to_json(const GameGraph& g, const StrategyWithMemory& s) {
  auto name = [&](NodeId v) { return g.node(v).name; };
  Json j;
  j["schema"] = "sse-profile/1";
  j["initial"] = s.machine.initial;
  j["red"] = s.machine.red;
  Json states = Json::array();
  for (size_t i = 0; i < s.machine.states.size(); ++i) {
    const MemoryState& st = s.machine.states[i];
    Json sg = Json::array();
    for (const auto& [v, w] : st.suggestions) sg.push_back({name(v), name(w)});
    states.push_back({{"id", i}, {"label", st.label}, {"red", st.is_red}, {"phase", st.visit_phase}, {"suggestions", sg}});
  }
  j["states"] = states;
  Json tr = Json::array();
  for (const auto& [k, next] : s.machine.transitions)
    tr.push_back({{"state", std::get<0>(k)}, {"node", name(std::get<1>(k))}, {"child", name(std::get<2>(k))}, {"next", next}});
  j["transitions"] = tr;
  Json lt = Json::array();
  for (const auto& [k, d] : s.leader) {
    Json dist = Json::array();
    for (const auto& [w, p] : d) dist.push_back({name(w), to_string(p)});
    lt.push_back({{"state", k.first}, {"node", name(k.second)}, {"dist", dist}});
  }
  j["leader"] = lt;
  Json ft = Json::array();
  for (const auto& [k, w] : s.follower) ft.push_back({{"state", k.first}, {"node", name(k.second)}, {"move", name(w)}});
  j["follower"] = ft;
  Json dl = Json::array(), df = Json::array();
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    if (v < static_cast<NodeId>(s.default_leader.size()) && s.default_leader[static_cast<size_t>(v)] != kNoNode)
      dl.push_back({name(v), name(s.default_leader[static_cast<size_t>(v)])});
    if (v < static_cast<NodeId>(s.default_follower.size()) && s.default_follower[static_cast<size_t>(v)] != kNoNode)
      df.push_back({name(v), name(s.default_follower[static_cast<size_t>(v)])});
  }
  j["defaults"] = {{"leader", dl}, {"follower", df}};
  return j;
}

/// Inverse of profile_to_json; throws GameError on unknown names or a
/// malformed document.
inline StrategyWithMemory profile_from_json(const GameGraph& g, const Json& j) {
  auto node = [&](const Json& x) {
    auto v = g.find(x.get<std::string>());
    if (!v) throw GameError(GameError::Kind::DanglingEdge, "profile names unknown node '" + x.get<std::string>() + "'");
    return *v;
  };
  auto rational = [](const Json& x) {
    auto r = parse_rational(x.get<std::string>());
    if (!r) throw GameError(GameError::Kind::Syntax, "bad probability '" + x.get<std::string>() + "'");
    return *r;
  };
  StrategyWithMemory s;
  try {
    if (j.at("schema") != "sse-profile/1") throw GameError(GameError::Kind::Syntax, "unknown profile schema");
    const size_t n = j.at("states").size();
    auto state = [&](const Json& x) {
      int m = x.get<int>();
      if (m < 0 || static_cast<size_t>(m) >= n) throw GameError(GameError::Kind::Syntax, "state index out of range");
      return m;
    };
    s.machine.initial = state(j.at("initial"));
    s.machine.red = state(j.at("red"));
    for (const auto& st : j.at("states")) {
      MemoryState m;
      m.label = st.value("label", "");
      m.is_red = st.value("red", false);
      m.visit_phase = st.value("phase", 0);
      for (const auto& p : st.at("suggestions")) m.suggestions.push_back({node(p.at(0)), node(p.at(1))});
      std::sort(m.suggestions.begin(), m.suggestions.end());
      s.machine.states.push_back(m);
    }
    for (const auto& t : j.at("transitions"))
      s.machine.transitions[{state(t.at("state")), node(t.at("node")), node(t.at("child"))}] = state(t.at("next"));
    for (const auto& l : j.at("leader")) {
      Distribution d;
      for (const auto& e : l.at("dist")) d.push_back({node(e.at(0)), rational(e.at(1))});
      s.leader[{state(l.at("state")), node(l.at("node"))}] = d;
    }
    for (const auto& f : j.at("follower")) s.follower[{state(f.at("state")), node(f.at("node"))}] = node(f.at("move"));
    s.default_leader.assign(g.size(), kNoNode);
    s.default_follower.assign(g.size(), kNoNode);
    for (const auto& p : j.at("defaults").at("leader")) s.default_leader[static_cast<size_t>(node(p.at(0)))] = node(p.at(1));
    for (const auto& p : j.at("defaults").at("follower"))
      s.default_follower[static_cast<size_t>(node(p.at(0)))] = node(p.at(1));
  } catch (const nlohmann::json::exception& e) {
    throw GameError(GameError::Kind::Syntax, std::string("malformed profile: ") + e.what());
  }
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    if (g.owner(v) == Owner::Leader && s.default_leader[static_cast<size_t>(v)] == kNoNode)
      throw GameError(GameError::Kind::Syntax, "profile lacks a default move at leader node " + g.node(v).name);
    if (g.owner(v) == Owner::Follower && s.default_follower[static_cast<size_t>(v)] == kNoNode)
      throw GameError(GameError::Kind::Syntax, "profile lacks a default move at follower node " + g.node(v).name);
  }
  return s;
}

inline Json sets_to_json(const GameGraph& g, const std::vector<CommitmentSet>& sets) {
  Json out = Json::object();
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    Json pieces = Json::array();
    for (const auto& p : sets[static_cast<size_t>(v)].pieces) {
      Json entries = Json::array();
      for (const auto& e : p.entries) {
        Json item{{"u1", to_string(e.point.u1)}, {"u2", to_string(e.point.u2)}};
        const Label& l = e.label;
        if (!l.is_leaf()) {
          Json lab{{"alpha", to_string(l.alpha)}, {"child", g.node(l.child).name}, {"piece", l.piece}, {"ref", l.ref1}};
          if (l.is_mixed()) lab["ref2"] = l.ref2;
          item["label"] = lab;
        }
        entries.push_back(item);
      }
      pieces.push_back(entries);
    }
    out[g.node(v).name] = pieces;
  }
  return out;
}

inline Json grid_to_json(const GameGraph& b, const ValueGrid& grid) {
  Json ks = Json::array();
  for (const auto& k : grid.ks) ks.push_back(to_string(k));
  Json rows = Json::object();
  for (NodeId v = 0; v < static_cast<NodeId>(b.size()); ++v) {
    Json row = Json::array();
    for (const auto& a : grid.A[static_cast<size_t>(v)]) row.push_back(a.str());
    rows[b.node(v).name] = row;
  }
  return {{"u_low", to_string(grid.u_low)}, {"u_high", to_string(grid.u_high)}, {"step", to_string(grid.step)},
          {"ks", ks}, {"rows", rows}};
}

}  // namespace sse

#endif  // SSE_PROFILE_IO_HPP
