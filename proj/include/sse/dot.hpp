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

#ifndef SSE_DOT_HPP
#define SSE_DOT_HPP

#include <map>
#include <sstream>
#include <string>

#include "sse/game.hpp"
#include "sse/strategy.hpp"

namespace sse {

/// Graphviz digraph: circles for the leader, boxes for the follower,
/// diamonds for chance, plain text for leaves. With a profile, follower
/// edges suggested in some memory state are labelled "suggested" and leader
/// edges carry their probability from the first state that plays them.
inline std::string export_graph_description(const GameGraph& g, const StrategyWithMemory* annot = nullptr) {
  std::map<std::pair<NodeId, NodeId>, std::string> tag;
  if (annot) {
    for (const auto& [k, w] : annot->follower) tag.emplace(std::pair{k.second, w}, "suggested");
    for (const auto& [k, d] : annot->leader)
      for (const auto& [w, p] : d)
        if (p > 0) tag.emplace(std::pair{k.second, w}, to_string(p));
  }
  std::ostringstream os;
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  os << "digraph game {\n";
  for (const auto& n : g.nodes()) {
    os << "  " << quote(n.name) << " [";
    switch (n.owner) {
      case Owner::Leader: os << "shape=circle"; break;
      case Owner::Follower: os << "shape=box"; break;
      case Owner::Chance: os << "shape=diamond"; break;
      case Owner::Leaf:
        os << "shape=plain, label=" << quote(n.name + " (" + to_string(n.u1) + ", " + to_string(n.u2) + ")");
        break;
    }
    if (static_cast<NodeId>(&n - g.nodes().data()) == g.root()) os << ", penwidth=2";
    os << "];\n";
  }
  for (const auto& n : g.nodes())
    for (size_t i = 0; i < n.children.size(); ++i) {
      const NodeId v = static_cast<NodeId>(&n - g.nodes().data());
      os << "  " << quote(n.name) << " -> " << quote(g.node(n.children[i]).name);
      if (n.owner == Owner::Chance) {
        os << " [label=" << quote(to_string(n.probs[i])) << "]";
      } else if (auto it = tag.find({v, n.children[i]}); it != tag.end()) {
        os << " [label=" << quote(it->second) << ", style=bold]";
      }
      os << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace sse

#endif  // SSE_DOT_HPP
