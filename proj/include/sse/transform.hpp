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

#ifndef SSE_TRANSFORM_HPP
#define SSE_TRANSFORM_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sse/game.hpp"

namespace sse {

struct BinaryDag {
  GameGraph game;
  /// Auxiliary node id -> id of the original node it splits. Original nodes
  /// keep their ids and are absent from the map.
  std::map<NodeId, NodeId> origin;
};

/// Rewrites every node with more than two children as a balanced binary tree
/// of auxiliary nodes of the same owner. Chance splits renormalise so the
/// product of probabilities along each new path equals the original edge
/// probability.
inline BinaryDag to_binary_dag(const GameGraph& g) {
  if (g.shape() == Shape::Cyclic)
    throw GameError(GameError::Kind::NotDag, "binary transform needs an acyclic game");

  GameBuilder b;
  for (const auto& n : g.nodes()) {
    if (n.owner == Owner::Leaf) b.leaf(n.name, n.u1, n.u2);
    else b.node(n.name, n.owner);
  }
  b.root(g.node(g.root()).name);

  struct Aux {
    std::string name;
    NodeId source;
  };
  std::vector<Aux> aux;
  struct Edge {
    std::string from, to;
    std::optional<Rational> prob;
  };
  std::vector<Edge> edges;

  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    const Node& n = g.node(v);
    const bool chance = n.owner == Owner::Chance;
    int counter = 0;
    struct Part {
      std::string name;
      Rational mass;
    };
    // Returns the name standing for children[lo, hi) and its total mass.
    auto split = [&](auto&& self, size_t lo, size_t hi) -> Part {
      if (hi - lo == 1) return {g.node(n.children[lo]).name, chance ? n.probs[lo] : Rational(1)};
      std::string name = n.name + ".a" + std::to_string(++counter);
      aux.push_back({name, v});
      size_t mid = lo + (hi - lo) / 2;
      Part l = self(self, lo, mid), r = self(self, mid, hi);
      Rational total = l.mass + r.mass;
      auto share = [&](const Rational& m) -> std::optional<Rational> {
        if (!chance) return std::nullopt;
        if (total == 0) return Rational(1, 2);
        return Rational(m / total);
      };
      edges.push_back({name, l.name, share(l.mass)});
      edges.push_back({name, r.name, share(r.mass)});
      return {name, total};
    };
    const size_t k = n.children.size();
    if (k <= 2) {
      for (size_t i = 0; i < k; ++i)
        edges.push_back({n.name, g.node(n.children[i]).name,
                         chance ? std::optional<Rational>(n.probs[i]) : std::nullopt});
      continue;
    }
    size_t mid = k / 2;
    Part l = split(split, 0, mid), r = split(split, mid, k);
    edges.push_back({n.name, l.name, chance ? std::optional<Rational>(l.mass) : std::nullopt});
    edges.push_back({n.name, r.name, chance ? std::optional<Rational>(r.mass) : std::nullopt});
  }
  for (const auto& a : aux) b.node(a.name, g.owner(a.source));
  for (auto& e : edges) b.edge(e.from, e.to, e.prob);

  BinaryDag out;
  out.game = b.build();
  for (const auto& a : aux) out.origin[*out.game.find(a.name)] = a.source;
  return out;
}

}  // namespace sse

#endif  // SSE_TRANSFORM_HPP
