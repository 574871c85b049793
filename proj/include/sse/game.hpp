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

// Two-player sequential games on directed graphs: nodes owned by the leader,
// the follower or chance, plus leaves carrying a utility pair.

#ifndef SSE_GAME_HPP
#define SSE_GAME_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sse/rational.hpp"

namespace sse {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

enum class Owner { Leader, Follower, Chance, Leaf };
enum class Shape { Tree, Dag, Cyclic };

inline std::string_view owner_name(Owner o) {
  switch (o) {
    case Owner::Leader: return "leader";
    case Owner::Follower: return "follower";
    case Owner::Chance: return "chance";
    case Owner::Leaf: return "leaf";
  }
  return "?";
}

inline std::string_view shape_name(Shape s) {
  switch (s) {
    case Shape::Tree: return "tree";
    case Shape::Dag: return "dag";
    case Shape::Cyclic: return "cyclic";
  }
  return "?";
}

class GameError : public std::runtime_error {
 public:
  enum class Kind {
    Syntax,
    DanglingEdge,
    DuplicateNode,
    DuplicateEdge,
    BadProbabilities,
    SelfLoop,
    LeafWithChildren,
    MissingChildren,
    MissingRoot,
    NotDag,
    NegativePayoffs,
    Capability,
  };
  GameError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Node {
  std::string name;
  Owner owner = Owner::Leaf;
  std::vector<NodeId> children;  // ascending ids
  std::vector<Rational> probs;   // chance nodes only, aligned with children
  Rational u1, u2;               // leaves only
};

/// Immutable validated game. Node ids are dense and follow declaration order.
class GameGraph {
 public:
  GameGraph() = default;

  NodeId root() const { return root_; }
  Shape shape() const { return shape_; }
  size_t size() const { return nodes_.size(); }
  const Node& node(NodeId v) const { return nodes_.at(static_cast<size_t>(v)); }
  const std::vector<Node>& nodes() const { return nodes_; }
  Owner owner(NodeId v) const { return node(v).owner; }
  const std::vector<NodeId>& children(NodeId v) const { return node(v).children; }
  bool is_leaf(NodeId v) const { return owner(v) == Owner::Leaf; }

  /// Chance probability of the edge v -> w (zero if w is not a child).
  Rational chance_prob(NodeId v, NodeId w) const {
    const Node& n = node(v);
    for (size_t i = 0; i < n.children.size(); ++i)
      if (n.children[i] == w) return n.probs.at(i);
    return 0;
  }

  std::optional<NodeId> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  size_t edge_count() const {
    size_t e = 0;
    for (const auto& n : nodes_) e += n.children.size();
    return e;
  }

  bool has_chance() const {
    return std::any_of(nodes_.begin(), nodes_.end(),
                       [](const Node& n) { return n.owner == Owner::Chance; });
  }

  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(size()); ++v)
      if (is_leaf(v)) out.push_back(v);
    return out;
  }

  /// Longest root-to-leaf edge count; only meaningful on acyclic games.
  int height() const;

 private:
  friend class GameBuilder;
  std::vector<Node> nodes_;
  NodeId root_ = kNoNode;
  Shape shape_ = Shape::Tree;
  std::unordered_map<std::string, NodeId> by_name_;
};

/// Computes Tree / Dag / Cyclic from the edge structure alone.
inline Shape compute_shape(const std::vector<Node>& nodes, NodeId root) {
  const size_t n = nodes.size();
  std::vector<int> color(n, 0), indeg(n, 0);
  for (const auto& nd : nodes)
    for (NodeId w : nd.children) ++indeg[static_cast<size_t>(w)];
  bool cyclic = false;
  // Iterative DFS with gray/black colouring.
  for (size_t s = 0; s < n && !cyclic; ++s) {
    if (color[s]) continue;
    std::vector<std::pair<NodeId, size_t>> stack{{static_cast<NodeId>(s), 0}};
    color[s] = 1;
    while (!stack.empty() && !cyclic) {
      auto& [v, i] = stack.back();
      const auto& ch = nodes[static_cast<size_t>(v)].children;
      if (i < ch.size()) {
        NodeId w = ch[i++];
        if (color[static_cast<size_t>(w)] == 1) {
          cyclic = true;
        } else if (color[static_cast<size_t>(w)] == 0) {
          color[static_cast<size_t>(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        color[static_cast<size_t>(v)] = 2;
        stack.pop_back();
      }
    }
  }
  if (cyclic) return Shape::Cyclic;
  for (size_t v = 0; v < n; ++v)
    if (indeg[v] > (static_cast<NodeId>(v) == root ? 0 : 1)) return Shape::Dag;
  return Shape::Tree;
}

inline int GameGraph::height() const {
  std::vector<int> memo(size(), -1);
  auto rec = [&](auto&& self, NodeId v) -> int {
    int& m = memo[static_cast<size_t>(v)];
    if (m >= 0) return m;
    int h = 0;
    for (NodeId w : children(v)) h = std::max(h, 1 + self(self, w));
    return m = h;
  };
  return rec(rec, root_);
}

/// Accumulates nodes and edges by name, then validates into a GameGraph.
class GameBuilder {
 public:
  GameBuilder& node(const std::string& name, Owner owner) {
    if (index_.count(name))
      throw GameError(GameError::Kind::DuplicateNode, "duplicate node '" + name + "'");
    index_[name] = static_cast<NodeId>(nodes_.size());
    Node n;
    n.name = name;
    n.owner = owner;
    nodes_.push_back(std::move(n));
    return *this;
  }
  GameBuilder& leaf(const std::string& name, Rational u1, Rational u2) {
    node(name, Owner::Leaf);
    nodes_.back().u1 = std::move(u1);
    nodes_.back().u2 = std::move(u2);
    return *this;
  }
  GameBuilder& edge(const std::string& from, const std::string& to,
                    std::optional<Rational> prob = std::nullopt) {
    edges_.push_back({from, to, std::move(prob)});
    return *this;
  }
  GameBuilder& root(const std::string& name) {
    root_ = name;
    return *this;
  }

  /// Validates and builds. Unreachable nodes are pruned; one warning each.
  GameGraph build(std::vector<std::string>* warnings = nullptr) const;

 private:
  struct PendingEdge {
    std::string from, to;
    std::optional<Rational> prob;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<PendingEdge> edges_;
  std::optional<std::string> root_;
};

inline GameGraph GameBuilder::build(std::vector<std::string>* warnings) const {
  using K = GameError::Kind;
  if (!root_) throw GameError(K::MissingRoot, "no root declared");
  auto rit = index_.find(*root_);
  if (rit == index_.end()) throw GameError(K::MissingRoot, "root '" + *root_ + "' is not a node");

  std::vector<Node> nodes = nodes_;
  std::vector<std::map<NodeId, std::optional<Rational>>> adj(nodes.size());
  for (const auto& e : edges_) {
    auto f = index_.find(e.from), t = index_.find(e.to);
    if (f == index_.end() || t == index_.end())
      throw GameError(K::DanglingEdge, "edge " + e.from + " -> " + e.to + " names an unknown node");
    if (f->second == t->second) throw GameError(K::SelfLoop, "self-loop at '" + e.from + "'");
    const Node& src = nodes[static_cast<size_t>(f->second)];
    if (src.owner == Owner::Leaf)
      throw GameError(K::LeafWithChildren, "leaf '" + e.from + "' has an outgoing edge");
    if ((src.owner == Owner::Chance) != e.prob.has_value())
      throw GameError(K::BadProbabilities, "edge " + e.from + " -> " + e.to +
                                               (e.prob ? ": probability on a non-chance edge"
                                                       : ": chance edge needs a probability"));
    if (e.prob && (*e.prob < 0 || *e.prob > 1))
      throw GameError(K::BadProbabilities, "probability out of [0,1] on " + e.from + " -> " + e.to);
    auto& out = adj[static_cast<size_t>(f->second)];
    if (out.count(t->second))
      throw GameError(K::DuplicateEdge, "duplicate edge " + e.from + " -> " + e.to);
    out.emplace(t->second, e.prob);
  }
  for (size_t v = 0; v < nodes.size(); ++v) {
    nodes[v].children.clear();
    nodes[v].probs.clear();
    for (const auto& [w, p] : adj[v]) {
      nodes[v].children.push_back(w);
      if (p) nodes[v].probs.push_back(*p);
    }
  }

  // Reachability from the root; everything else is pruned.
  std::vector<bool> seen(nodes.size(), false);
  std::vector<NodeId> stack{rit->second};
  seen[static_cast<size_t>(rit->second)] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : nodes[static_cast<size_t>(v)].children)
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        stack.push_back(w);
      }
  }
  std::vector<NodeId> remap(nodes.size(), kNoNode);
  GameGraph g;
  for (size_t v = 0; v < nodes.size(); ++v) {
    if (!seen[v]) {
      if (warnings) warnings->push_back("unreachable node '" + nodes[v].name + "' pruned");
      continue;
    }
    remap[v] = static_cast<NodeId>(g.nodes_.size());
    g.nodes_.push_back(nodes[v]);
  }
  for (auto& n : g.nodes_)
    for (auto& w : n.children) w = remap[static_cast<size_t>(w)];

  for (auto& n : g.nodes_) {
    if (n.owner != Owner::Leaf && n.children.empty())
      throw GameError(K::MissingChildren, "non-leaf '" + n.name + "' has no children");
    if (n.owner == Owner::Chance) {
      Rational sum = 0;
      for (const auto& p : n.probs) sum += p;
      if (sum != 1)
        throw GameError(K::BadProbabilities,
                        "chance node '" + n.name + "' probabilities sum to " + sum.get_str());
    }
  }
  for (size_t v = 0; v < g.nodes_.size(); ++v) g.by_name_[g.nodes_[v].name] = static_cast<NodeId>(v);
  g.root_ = remap[static_cast<size_t>(rit->second)];
  g.shape_ = compute_shape(g.nodes_, g.root_);
  return g;
}

/// True iff every leaf utility pair is componentwise non-negative.
inline bool validate_nonnegative(const GameGraph& g) {
  for (const auto& n : g.nodes())
    if (n.owner == Owner::Leaf && (n.u1 < 0 || n.u2 < 0)) return false;
  return true;
}

}  // namespace sse

#endif  // SSE_GAME_HPP
