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

// Seeded random game families.

#ifndef SSE_GENERATE_HPP
#define SSE_GENERATE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string_view>
#include <set>
#include <string>
#include <vector>

#include "sse/game.hpp"

namespace sse {

enum class Family { Tree, Dag, Layered, Cyclic, Chance };

inline std::optional<Family> parse_family(std::string_view s) {
  if (s == "tree") return Family::Tree;
  if (s == "dag") return Family::Dag;
  if (s == "layered") return Family::Layered;
  if (s == "cyclic") return Family::Cyclic;
  if (s == "chance") return Family::Chance;
  return std::nullopt;
}

struct GenOptions {
  int max_payoff = 9;
  int max_out_degree = 3;
  double extra_edge_rate = 0.5;  // dag families: extra parents per node
  double chance_rate = 0.3;      // chance family: share of chance nodes
  int back_edges = 2;            // cyclic family
};

namespace detail {

struct Skeleton {
  std::vector<std::vector<int>> children;
  std::vector<int> parent;  // tree parent, -1 for the root
};

inline GameGraph realize(const Skeleton& s, std::mt19937_64& rng, const GenOptions& o, bool with_chance) {
  GameBuilder b;
  std::uniform_int_distribution<int> pay(0, o.max_payoff);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const size_t n = s.children.size();
  auto name = [](size_t i) { return "n" + std::to_string(i); };
  // The last branching node is always chance, so the family never degenerates.
  int forced = -1;
  for (size_t i = 0; i < n; ++i)
    if (s.children[i].size() > 1) forced = static_cast<int>(i);
  for (size_t i = 0; i < n; ++i) {
    if (s.children[i].empty()) {
      int u1 = pay(rng);
      int u2 = pay(rng);
      b.leaf(name(i), u1, u2);
      continue;
    }
    Owner owner = coin(rng) < 0.5 ? Owner::Leader : Owner::Follower;
    if (with_chance && s.children[i].size() > 1 && (coin(rng) < o.chance_rate || static_cast<int>(i) == forced))
      owner = Owner::Chance;
    b.node(name(i), owner);
    if (owner == Owner::Chance) {
      std::vector<int> w;
      int total = 0;
      for (size_t k = 0; k < s.children[i].size(); ++k) {
        w.push_back(std::uniform_int_distribution<int>(1, 4)(rng));
        total += w.back();
      }
      for (size_t k = 0; k < s.children[i].size(); ++k)
        b.edge(name(i), name(static_cast<size_t>(s.children[i][k])), make_rational(w[k], total));
    } else {
      for (int c : s.children[i]) b.edge(name(i), name(static_cast<size_t>(c)));
    }
  }
  b.root(name(0));
  return b.build(nullptr);
}

/// Nodes 0..n-1 in topological order, each reachable from 0 through a
/// random tree parent, plus extra forward edges for sharing.
inline Skeleton forward_skeleton(int n, std::mt19937_64& rng, const GenOptions& o, bool share) {
  Skeleton s;
  s.children.resize(static_cast<size_t>(std::max(n, 2)));
  n = static_cast<int>(s.children.size());
  s.parent.assign(static_cast<size_t>(n), -1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 1; i < n; ++i) {
    std::vector<int> cand;
    for (int j = 0; j < i; ++j)
      if (static_cast<int>(s.children[static_cast<size_t>(j)].size()) < o.max_out_degree) cand.push_back(j);
    int p = cand.empty() ? i - 1 : cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)];
    s.children[static_cast<size_t>(p)].push_back(i);
    s.parent[static_cast<size_t>(i)] = p;
    if (!share) continue;
    while (coin(rng) < o.extra_edge_rate) {
      int q = std::uniform_int_distribution<int>(0, i - 1)(rng);
      auto& ch = s.children[static_cast<size_t>(q)];
      if (ch.empty() || static_cast<int>(ch.size()) >= o.max_out_degree) break;
      if (std::find(ch.begin(), ch.end(), i) == ch.end()) ch.push_back(i);
      break;
    }
  }
  return s;
}

}  // namespace detail

/// Random tree with about `size` nodes.
inline GameGraph generate_tree(int size, uint64_t seed, const GenOptions& o = {}) {
  std::mt19937_64 rng(seed);
  return detail::realize(detail::forward_skeleton(size, rng, o, false), rng, o, false);
}

/// Random DAG with `size` nodes and shared subgames.
inline GameGraph generate_dag(int size, uint64_t seed, const GenOptions& o = {}) {
  std::mt19937_64 rng(seed);
  return detail::realize(detail::forward_skeleton(size, rng, o, true), rng, o, false);
}

/// Random DAG with chance nodes.
inline GameGraph generate_chance(int size, uint64_t seed, const GenOptions& o = {}) {
  std::mt19937_64 rng(seed);
  return detail::realize(detail::forward_skeleton(size, rng, o, true), rng, o, true);
}

/// Layers of `width` nodes; each node links to two nodes of the next layer.
inline GameGraph generate_layered(int size, uint64_t seed, const GenOptions& o = {}) {
  std::mt19937_64 rng(seed);
  int width = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(std::max(size, 4)))));
  detail::Skeleton s;
  s.children.resize(1);
  std::vector<int> prev{0};
  int next_id = 1;
  while (next_id + width <= std::max(size, width + 1)) {
    std::vector<int> layer;
    for (int k = 0; k < width; ++k) layer.push_back(next_id++);
    s.children.resize(static_cast<size_t>(next_id));
    std::uniform_int_distribution<size_t> pick(0, layer.size() - 1);
    for (int p : prev) {
      std::set<int> ch{layer[pick(rng)], layer[pick(rng)]};
      s.children[static_cast<size_t>(p)].assign(ch.begin(), ch.end());
    }
    prev = layer;
  }
  return detail::realize(s, rng, o, false);
}

/// Random DAG plus back edges from internal nodes to tree ancestors.
inline GameGraph generate_cyclic(int size, uint64_t seed, const GenOptions& o = {}) {
  std::mt19937_64 rng(seed);
  detail::Skeleton s = detail::forward_skeleton(size, rng, o, true);
  std::vector<int> internal;
  for (size_t i = 1; i < s.children.size(); ++i)
    if (!s.children[i].empty()) internal.push_back(static_cast<int>(i));
  if (internal.empty()) {
    // Only the root branches: turn its first child into a loop back to it.
    s.children[static_cast<size_t>(s.children[0].front())].push_back(0);
    return detail::realize(s, rng, o, false);
  }
  for (int k = 0; k < std::max(1, o.back_edges); ++k) {
    int from = internal[std::uniform_int_distribution<size_t>(0, internal.size() - 1)(rng)];
    std::vector<int> anc;
    for (int a = s.parent[static_cast<size_t>(from)]; a >= 0; a = s.parent[static_cast<size_t>(a)]) anc.push_back(a);
    int to = anc[std::uniform_int_distribution<size_t>(0, anc.size() - 1)(rng)];
    auto& ch = s.children[static_cast<size_t>(from)];
    if (std::find(ch.begin(), ch.end(), to) == ch.end()) ch.push_back(to);
  }
  return detail::realize(s, rng, o, false);
}

inline GameGraph generate(Family f, int size, uint64_t seed, const GenOptions& o = {}) {
  switch (f) {
    case Family::Tree: return generate_tree(size, seed, o);
    case Family::Dag: return generate_dag(size, seed, o);
    case Family::Layered: return generate_layered(size, seed, o);
    case Family::Cyclic: return generate_cyclic(size, seed, o);
    case Family::Chance: return generate_chance(size, seed, o);
  }
  return generate_dag(size, seed, o);
}

}  // namespace sse

#endif  // SSE_GENERATE_HPP
