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

// Commitment sets. The outcomes the leader can enforce below a node form a
// union of convex pieces; each piece is stored by its generating points, and
// every point carries a label saying how to realize it one level down.

#ifndef SSE_UPWARD_HPP
#define SSE_UPWARD_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sse/game.hpp"
#include "sse/graph_analysis.hpp"

namespace sse {

/// Point in payoff space.
struct Outcome {
  Rational u1, u2;
  bool operator==(const Outcome& o) const { return u1 == o.u1 && u2 == o.u2; }
  bool operator<(const Outcome& o) const { return u1 != o.u1 ? u1 < o.u1 : u2 < o.u2; }
};

/// How an entry is realized: alpha * ref1 + (1 - alpha) * ref2 of entries of
/// piece `piece` at `child`. Pure labels have alpha = 1 and ref2 = -1; leaf
/// entries have child = kNoNode.
struct Label {
  Rational alpha = 1;
  NodeId child = kNoNode;
  int piece = -1;
  int ref1 = -1;
  int ref2 = -1;
  bool is_leaf() const { return child == kNoNode; }
  bool is_mixed() const { return ref2 >= 0; }
};

struct Entry {
  Outcome point;
  Label label;
};

struct Piece {
  std::vector<Entry> entries;
};

struct CommitmentSet {
  std::vector<Piece> pieces;

  bool empty() const {
    for (const auto& p : pieces)
      if (!p.entries.empty()) return false;
    return true;
  }
  size_t entry_count() const {
    size_t n = 0;
    for (const auto& p : pieces) n += p.entries.size();
    return n;
  }
  /// Distinct points, sorted.
  std::vector<Outcome> points() const {
    std::vector<Outcome> out;
    for (const auto& p : pieces)
      for (const auto& e : p.entries) out.push_back(e.point);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

class NoCommitment : public std::runtime_error {
 public:
  NoCommitment() : std::runtime_error("root commitment set is empty") {}
};

namespace detail {

inline Rational cross(const Outcome& o, const Outcome& a, const Outcome& b) {
  return (a.u1 - o.u1) * (b.u2 - o.u2) - (a.u2 - o.u2) * (b.u1 - o.u1);
}

/// Indices of strict hull vertices (collinear points dropped). Equal points
/// keep the first occurrence.
inline std::vector<size_t> hull_indices(const std::vector<Outcome>& pts) {
  std::vector<size_t> idx(pts.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return pts[a] < pts[b]; });
  std::vector<size_t> uniq;
  for (size_t i : idx)
    if (uniq.empty() || !(pts[uniq.back()] == pts[i])) uniq.push_back(i);
  if (uniq.size() <= 2) return uniq;
  std::vector<size_t> h(2 * uniq.size());
  size_t k = 0;
  for (size_t i : uniq) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (size_t j = uniq.size() - 1, t = k + 1; j-- > 0;) {
    size_t i = uniq[j];
    while (k >= t && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

/// Largest u1 over the hull of `p` restricted to u2 >= t.
inline Extended max_u1_above(const Piece& p, const Rational& t) {
  Extended best = Extended::neg_inf();
  const auto& e = p.entries;
  for (size_t a = 0; a < e.size(); ++a) {
    if (e[a].point.u2 < t) continue;
    best = max(best, Extended(e[a].point.u1));
    for (size_t b = 0; b < e.size(); ++b) {
      if (e[b].point.u2 >= t) continue;
      Rational alpha = (t - e[b].point.u2) / (e[a].point.u2 - e[b].point.u2);
      best = max(best, Extended(alpha * e[a].point.u1 + (1 - alpha) * e[b].point.u1));
    }
  }
  return best;
}

/// Every point of `x` is weakly below-left of some point of hull(y).
inline bool dominated_by(const Piece& x, const Piece& y) {
  for (const auto& e : x.entries) {
    Extended m = max_u1_above(y, e.point.u2);
    if (m.is_neg_inf() || m.value() < e.point.u1) return false;
  }
  return true;
}

inline void prune_dominated(std::vector<Piece>& pieces) {
  std::vector<bool> drop(pieces.size(), false);
  for (size_t x = 0; x < pieces.size(); ++x)
    for (size_t y = 0; y < pieces.size() && !drop[x]; ++y) {
      if (x == y || drop[y]) continue;
      if (dominated_by(pieces[x], pieces[y]) && (y < x || !dominated_by(pieces[y], pieces[x]))) drop[x] = true;
    }
  std::vector<Piece> kept;
  for (size_t i = 0; i < pieces.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(pieces[i]));
  pieces = std::move(kept);
}

}  // namespace detail

inline CommitmentSet upward_leaf(const GameGraph& g, NodeId v) {
  CommitmentSet s;
  s.pieces.push_back(Piece{{Entry{Outcome{g.node(v).u1, g.node(v).u2}, Label{}}}});
  return s;
}

inline CommitmentSet upward_leader(const GameGraph& g, NodeId v, const std::vector<CommitmentSet>& sets) {
  std::vector<NodeId> live;
  for (NodeId w : g.children(v))
    if (!sets[static_cast<size_t>(w)].empty()) live.push_back(w);
  CommitmentSet out;
  auto pure = [](NodeId w, int piece, int idx) { return Label{Rational(1), w, piece, idx, -1}; };
  if (live.size() == 1) {
    NodeId w = live.front();
    const auto& cs = sets[static_cast<size_t>(w)];
    for (size_t pi = 0; pi < cs.pieces.size(); ++pi) {
      Piece p;
      for (size_t ei = 0; ei < cs.pieces[pi].entries.size(); ++ei)
        p.entries.push_back({cs.pieces[pi].entries[ei].point, pure(w, static_cast<int>(pi), static_cast<int>(ei))});
      if (!p.entries.empty()) out.pieces.push_back(std::move(p));
    }
    return out;
  }
  for (size_t a = 0; a < live.size(); ++a)
    for (size_t b = a + 1; b < live.size(); ++b) {
      const auto& sa = sets[static_cast<size_t>(live[a])];
      const auto& sb = sets[static_cast<size_t>(live[b])];
      for (size_t pa = 0; pa < sa.pieces.size(); ++pa)
        for (size_t pb = 0; pb < sb.pieces.size(); ++pb) {
          std::vector<Outcome> pts;
          std::vector<Label> labels;
          for (size_t e = 0; e < sa.pieces[pa].entries.size(); ++e) {
            pts.push_back(sa.pieces[pa].entries[e].point);
            labels.push_back(pure(live[a], static_cast<int>(pa), static_cast<int>(e)));
          }
          for (size_t e = 0; e < sb.pieces[pb].entries.size(); ++e) {
            pts.push_back(sb.pieces[pb].entries[e].point);
            labels.push_back(pure(live[b], static_cast<int>(pb), static_cast<int>(e)));
          }
          if (pts.empty()) continue;
          Piece p;
          for (size_t i : detail::hull_indices(pts)) p.entries.push_back({pts[i], labels[i]});
          out.pieces.push_back(std::move(p));
        }
    }
  detail::prune_dominated(out.pieces);
  return out;
}

/// Smallest follower payoff that makes moving v -> w credible: the best
/// sibling value the leader can hold the follower to. Only children get -inf.
inline Extended incentive_threshold(const GameGraph& g, const MaxminTable& t, NodeId v, NodeId w) {
  Extended th = Extended::neg_inf();
  for (NodeId s : g.children(v))
    if (s != w) th = max(th, Extended(t.mu2[static_cast<size_t>(s)]));
  return th;
}

inline CommitmentSet upward_follower(const GameGraph& g, const MaxminTable& t, NodeId v,
                                     const std::vector<CommitmentSet>& sets) {
  CommitmentSet out;
  for (NodeId w : g.children(v)) {
    Extended th = incentive_threshold(g, t, v, w);
    const auto& cs = sets[static_cast<size_t>(w)];
    for (size_t pi = 0; pi < cs.pieces.size(); ++pi) {
      const auto& e = cs.pieces[pi].entries;
      Piece p;
      auto above = [&](size_t i) { return th.is_neg_inf() || e[i].point.u2 >= th.value(); };
      for (size_t a = 0; a < e.size(); ++a)
        if (above(a))
          p.entries.push_back({e[a].point, Label{Rational(1), w, static_cast<int>(pi), static_cast<int>(a), -1}});
      for (size_t a = 0; a < e.size(); ++a) {
        if (!above(a)) continue;
        for (size_t b = 0; b < e.size(); ++b) {
          if (above(b)) continue;
          const Outcome& p1 = e[a].point;
          const Outcome& p2 = e[b].point;
          Rational alpha = (th.value() - p2.u2) / (p1.u2 - p2.u2);
          Outcome q{alpha * p1.u1 + (1 - alpha) * p2.u1, th.value()};
          p.entries.push_back({q, Label{alpha, w, static_cast<int>(pi), static_cast<int>(a), static_cast<int>(b)}});
        }
      }
      if (!p.entries.empty()) out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

struct UpwardResult {
  MaxminTable maxmin;
  std::vector<CommitmentSet> sets;
};

/// Commitment sets for every node of a chance-free DAG or tree.
inline UpwardResult upward_pass(const GameGraph& g) {
  if (g.shape() == Shape::Cyclic)
    throw GameError(GameError::Kind::NotDag, "upward pass needs an acyclic game; use the cyclic solver");
  if (g.has_chance())
    throw GameError(GameError::Kind::Capability, "exact solver does not support chance nodes; use approx-chance");
  UpwardResult r;
  r.maxmin = compute_maxmin(g);
  r.sets.resize(g.size());
  for (NodeId v : reverse_topo_order(g)) {
    CommitmentSet& s = r.sets[static_cast<size_t>(v)];
    switch (g.owner(v)) {
      case Owner::Leaf: s = upward_leaf(g, v); break;
      case Owner::Leader: s = upward_leader(g, v, r.sets); break;
      case Owner::Follower: s = upward_follower(g, r.maxmin, v, r.sets); break;
      case Owner::Chance: break;
    }
  }
  return r;
}

struct EntryRef {
  NodeId node = kNoNode;
  int piece = -1;
  int entry = -1;
};

/// Leader-optimal root entry: max u1, then max u2, then first in order.
inline EntryRef select_root_outcome(const GameGraph& g, const std::vector<CommitmentSet>& sets) {
  const auto& s = sets.at(static_cast<size_t>(g.root()));
  EntryRef best{g.root(), -1, -1};
  const Outcome* bp = nullptr;
  for (size_t pi = 0; pi < s.pieces.size(); ++pi)
    for (size_t ei = 0; ei < s.pieces[pi].entries.size(); ++ei) {
      const Outcome& o = s.pieces[pi].entries[ei].point;
      if (!bp || o.u1 > bp->u1 || (o.u1 == bp->u1 && o.u2 > bp->u2)) {
        bp = &o;
        best.piece = static_cast<int>(pi);
        best.entry = static_cast<int>(ei);
      }
    }
  if (!bp) throw NoCommitment();
  return best;
}

inline const Entry& entry_at(const std::vector<CommitmentSet>& sets, const EntryRef& r) {
  return sets.at(static_cast<size_t>(r.node))
      .pieces.at(static_cast<size_t>(r.piece))
      .entries.at(static_cast<size_t>(r.entry));
}

/// Leaf distribution realizing an entry, by expanding labels.
inline std::map<NodeId, Rational> leaf_mix(const std::vector<CommitmentSet>& sets, const EntryRef& r) {
  std::map<NodeId, Rational> out;
  std::vector<std::pair<EntryRef, Rational>> stack{{r, Rational(1)}};
  while (!stack.empty()) {
    auto [ref, w] = stack.back();
    stack.pop_back();
    if (w == 0) continue;
    const Label& l = entry_at(sets, ref).label;
    if (l.is_leaf()) {
      out[ref.node] += w;
      continue;
    }
    stack.push_back({EntryRef{l.child, l.piece, l.ref1}, w * l.alpha});
    if (l.is_mixed()) stack.push_back({EntryRef{l.child, l.piece, l.ref2}, w * (1 - l.alpha)});
  }
  return out;
}

}  // namespace sse

#endif  // SSE_UPWARD_HPP
