// Copyright 2026 The hyperdual Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperdual/bits.hpp"
#include "hyperdual/errors.hpp"

namespace hyperdual {

/// H = (V, E): K vertices and N hyperedges, each hyperedge stored as its
/// binary incidence ("edge vector") row of width K.
///
/// Invariants, checked on construction: every row has width K, no row is
/// all-zero, and no two rows are equal unless duplicates were explicitly
/// allowed.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::size_t num_vertices, BitMatrix incidence, bool allow_duplicate_edges = false)
      : num_vertices_(num_vertices),
        incidence_(std::move(incidence)),
        allow_duplicates_(allow_duplicate_edges) {
    if (incidence_.cols() != num_vertices_) {
      throw DimensionMismatch("incidence width " + std::to_string(incidence_.cols()) +
                              " does not match vertex count " + std::to_string(num_vertices_));
    }
    for (std::size_t e = 0; e < incidence_.rows(); ++e) {
      if (incidence_.row(e).none()) {
        throw InvalidInput("hyperedge " + std::to_string(e + 1) + " is empty");
      }
    }
    if (!allow_duplicates_ && has_duplicate_rows(incidence_)) {
      throw InvalidInput("duplicate hyperedges (construct with allow_duplicate_edges to permit)");
    }
  }

  /// Builds from 0-indexed vertex lists. A vertex listed twice in one edge is rejected.
  static Hypergraph from_edges(std::size_t num_vertices,
                               const std::vector<std::vector<std::size_t>>& edges,
                               bool allow_duplicate_edges = false) {
    BitMatrix m(num_vertices);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      BitVector row(num_vertices);
      for (auto v : edges[e]) {
        if (v >= num_vertices) {
          throw InvalidInput("edge " + std::to_string(e + 1) + " references vertex " +
                             std::to_string(v + 1) + " beyond K=" + std::to_string(num_vertices));
        }
        if (row.get(v)) {
          throw InvalidInput("edge " + std::to_string(e + 1) + " lists vertex " +
                             std::to_string(v + 1) + " twice");
        }
        row.set(v);
      }
      m.append_row(std::move(row));
    }
    return Hypergraph(num_vertices, std::move(m), allow_duplicate_edges);
  }

  static bool has_duplicate_rows(const BitMatrix& m) {
    std::vector<BitVector> rows(m.row_span().begin(), m.row_span().end());
    std::sort(rows.begin(), rows.end());
    return std::adjacent_find(rows.begin(), rows.end()) != rows.end();
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return incidence_.rows(); }
  const BitMatrix& incidence() const { return incidence_; }
  const BitVector& edge(std::size_t e) const { return incidence_.row(e); }
  std::vector<std::size_t> edge_vertices(std::size_t e) const { return incidence_.row(e).ones(); }
  std::size_t edge_degree(std::size_t e) const { return incidence_.row(e).popcount(); }
  bool allows_duplicate_edges() const { return allow_duplicates_; }

  std::vector<std::size_t> vertex_degrees() const {
    std::vector<std::size_t> deg(num_vertices_, 0);
    for (std::size_t e = 0; e < num_edges(); ++e) {
      for (auto v : edge(e).ones()) ++deg[v];
    }
    return deg;
  }
  std::vector<std::size_t> edge_degrees() const {
    std::vector<std::size_t> deg(num_edges());
    for (std::size_t e = 0; e < num_edges(); ++e) deg[e] = edge_degree(e);
    return deg;
  }
  /// Vertices contained in no hyperedge.
  std::vector<std::size_t> isolated_vertices() const {
    auto deg = vertex_degrees();
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < deg.size(); ++v) {
      if (deg[v] == 0) out.push_back(v);
    }
    return out;
  }

  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  const std::vector<std::string>& edge_labels() const { return edge_labels_; }

  Hypergraph with_labels(std::vector<std::string> vertex_labels,
                         std::vector<std::string> edge_labels) const {
    if (!vertex_labels.empty() && vertex_labels.size() != num_vertices_) {
      throw DimensionMismatch("vertex label count does not match K");
    }
    if (!edge_labels.empty() && edge_labels.size() != num_edges()) {
      throw DimensionMismatch("edge label count does not match N");
    }
    Hypergraph out = *this;
    out.vertex_labels_ = std::move(vertex_labels);
    out.edge_labels_ = std::move(edge_labels);
    return out;
  }

  /// Structural equality: same K and bit-identical incidence, in order.
  /// Labels and the duplicate flag are not compared.
  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.incidence_ == b.incidence_;
  }

 private:
  std::size_t num_vertices_ = 0;
  BitMatrix incidence_;
  bool allow_duplicates_ = false;
  std::vector<std::string> vertex_labels_;
  std::vector<std::string> edge_labels_;
};

/// Greedy maximal GF(2)-independent subset of the edges, scanned in input order.
struct IndependentSet {
  std::vector<std::size_t> edge_indices;
  std::size_t rank = 0;
};

inline std::size_t rank(const Hypergraph& h) { return gf2_rank(h.incidence()); }

/// Transpose of the incidence: vertex i of h becomes dual edge
/// {m : v_i in e_m}. Vertices of h that lie in no edge would give empty dual
/// edges; they are dropped with a warning. The dual may legitimately carry
/// duplicate edges (vertices of h with identical memberships).
inline Hypergraph dual(const Hypergraph& h) {
  const BitMatrix t = h.incidence().transposed();
  BitMatrix kept(h.num_edges());
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.row(i).none()) {
      ++dropped;
      continue;
    }
    kept.append_row(t.row(i));
  }
  if (dropped > 0) {
    warn("dual: dropped " + std::to_string(dropped) + " empty dual edge(s) from isolated vertices");
  }
  return Hypergraph(h.num_edges(), std::move(kept), /*allow_duplicate_edges=*/true);
}

/// H*: same vertices; edges are the canonical GF(2) nullspace basis of the
/// incidence matrix, so each has even overlap with every edge of h and there
/// are exactly K - rank(h) of them.
inline Hypergraph orthogonal(const Hypergraph& h) {
  return Hypergraph(h.num_vertices(), gf2_nullspace(h.incidence()));
}

inline IndependentSet independent_set(const Hypergraph& h) {
  // Basis kept in echelon form: pivot column -> reduced vector owning it.
  std::vector<std::pair<std::size_t, BitVector>> basis;
  IndependentSet out;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    BitVector v = h.edge(e);
    for (const auto& [pivot, b] : basis) {
      if (v.get(pivot)) v ^= b;
    }
    if (auto p = v.first_set()) {
      for (auto& [pivot, b] : basis) {
        if (b.get(*p)) b ^= v;
      }
      basis.emplace_back(*p, std::move(v));
      out.edge_indices.push_back(e);
    }
  }
  out.rank = out.edge_indices.size();
  return out;
}

/// The sub-hypergraph on the selected edges (same vertex set, edge order kept).
inline Hypergraph restrict_edges(const Hypergraph& h, const std::vector<std::size_t>& edges) {
  BitMatrix m(h.num_vertices());
  for (auto e : edges) m.append_row(h.edge(e));
  return Hypergraph(h.num_vertices(), std::move(m), h.allows_duplicate_edges());
}

inline bool has_independent_edges(const Hypergraph& h) { return rank(h) == h.num_edges(); }

/// Relabels h: old vertex v becomes vertex_map[v], old edge i is placed at
/// position edge_map[i]. Both maps must be permutations.
inline Hypergraph relabel(const Hypergraph& h, const std::vector<std::size_t>& vertex_map,
                          const std::vector<std::size_t>& edge_map) {
  auto is_perm = [](const std::vector<std::size_t>& p, std::size_t n) {
    if (p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto x : p) {
      if (x >= n || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  };
  if (!is_perm(vertex_map, h.num_vertices()) || !is_perm(edge_map, h.num_edges())) {
    throw InvalidInput("relabel: maps must be permutations of the vertex and edge sets");
  }
  BitMatrix m(h.num_edges(), h.num_vertices());
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    for (auto v : h.edge(e).ones()) m.set(edge_map[e], vertex_map[v]);
  }
  return Hypergraph(h.num_vertices(), std::move(m), true);
}

/// Witness that h is self-dual: relabel(dual(h), vertex_map, edge_map) == h.
/// vertex_map sends dual vertex m (edge m of h) to a vertex of h; edge_map
/// sends dual edge i (vertex i of h) to an edge of h.
struct SelfDualWitness {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
};

namespace detail {

// Bipartite matching of dual vertices onto candidate vertices of h.
inline bool match_columns(const std::vector<BitVector>& cand, std::vector<std::size_t>& match_of) {
  const std::size_t n = cand.size();
  std::vector<std::size_t> owner(n, n);
  match_of.assign(n, n);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t m) -> bool {
    for (auto c : cand[m].ones()) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (owner[c] == n || self(self, owner[c])) {
        owner[c] = m;
        match_of[m] = c;
        return true;
      }
    }
    return false;
  };
  for (std::size_t m = 0; m < n; ++m) {
    seen.assign(n, 0);
    if (!augment(augment, m)) return false;
  }
  return true;
}

class SelfDualSearch {
 public:
  SelfDualSearch(const Hypergraph& h, std::size_t node_budget)
      : h_(h), n_(h.num_vertices()), budget_(node_budget) {
    target_ = h.incidence().transposed();  // rows: dual edges, cols: dual vertices
    vdeg_ = h.vertex_degrees();
    edeg_ = h.edge_degrees();
    complement_.reserve(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      BitVector c(n_);
      for (std::size_t k = 0; k < n_; ++k) c.set(k, !h.edge(r).get(k));
      complement_.push_back(std::move(c));
    }
  }

  std::optional<SelfDualWitness> run() {
    // Dual vertex m has degree |e_m|; it can only land on a vertex of h with that degree.
    std::vector<BitVector> cand(n_, BitVector(n_));
    for (std::size_t m = 0; m < n_; ++m) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (vdeg_[c] == edeg_[m]) cand[m].set(c);
      }
    }
    row_map_.assign(n_, n_);
    used_.assign(n_, false);
    if (!search(cand, 0)) return std::nullopt;
    return witness_;
  }

 private:
  bool consistent(const std::vector<BitVector>& cand, std::size_t i, std::size_t r) const {
    if (used_[r] || edeg_[r] != vdeg_[i]) return false;
    for (std::size_t m = 0; m < n_; ++m) {
      const BitVector& allowed = target_.get(i, m) ? h_.edge(r) : complement_[r];
      if (!cand[m].intersects(allowed)) return false;
    }
    return true;
  }

  bool search(const std::vector<BitVector>& cand, std::size_t depth) {
    if (depth == n_) {
      std::vector<std::size_t> col_map;
      if (!match_columns(cand, col_map)) return false;
      witness_.vertex_map = col_map;
      witness_.edge_map = row_map_;
      return true;
    }
    // Most constrained dual edge first.
    std::size_t best = n_, best_count = n_ + 1;
    std::vector<std::size_t> best_options;
    for (std::size_t i = 0; i < n_; ++i) {
      if (row_map_[i] != n_) continue;
      std::vector<std::size_t> options;
      for (std::size_t r = 0; r < n_; ++r) {
        if (consistent(cand, i, r)) options.push_back(r);
      }
      if (options.size() < best_count) {
        best = i;
        best_count = options.size();
        best_options = std::move(options);
        if (best_count == 0) return false;
      }
    }
    for (auto r : best_options) {
      if (++nodes_ > budget_) {
        throw SearchBudgetExceeded("self-duality search exceeded " + std::to_string(budget_) +
                                   " nodes");
      }
      std::vector<BitVector> next = cand;
      bool dead = false;
      for (std::size_t m = 0; m < n_ && !dead; ++m) {
        next[m] &= target_.get(best, m) ? h_.edge(r) : complement_[r];
        dead = next[m].none();
      }
      if (dead) continue;
      row_map_[best] = r;
      used_[r] = true;
      if (search(next, depth + 1)) return true;
      row_map_[best] = n_;
      used_[r] = false;
    }
    return false;
  }

  const Hypergraph& h_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  BitMatrix target_;
  std::vector<BitVector> complement_;
  std::vector<std::size_t> vdeg_, edeg_;
  std::vector<std::size_t> row_map_;
  std::vector<bool> used_;
  SelfDualWitness witness_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultSelfDualBudget = 1'000'000;

/// Exact test for H ~= dual(H). Cheap invariants first (K == N, no isolated
/// vertices, equal sorted degree sequences), then a backtracking search over
/// dual-edge -> edge assignments with forward checking on the induced vertex
/// candidates. Throws SearchBudgetExceeded when more than `node_budget`
/// assignments were tried.
inline std::optional<SelfDualWitness> is_self_dual(const Hypergraph& h,
                                                   std::size_t node_budget = kDefaultSelfDualBudget) {
  if (h.num_vertices() != h.num_edges()) return std::nullopt;
  if (!h.isolated_vertices().empty()) return std::nullopt;
  auto vdeg = h.vertex_degrees();
  auto edeg = h.edge_degrees();
  std::sort(vdeg.begin(), vdeg.end());
  std::sort(edeg.begin(), edeg.end());
  if (vdeg != edeg) return std::nullopt;
  return detail::SelfDualSearch(h, node_budget).run();
}

}  // namespace hyperdual
