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
#include <array>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperdual/bits.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"

namespace hyperdual {

enum class Boundary { periodic, open };

enum class LatticeKind { chain, square, honeycomb, triangular, kagome, cubic, colex2 };

/// Undirected graph. Self-loops are never allowed. Parallel edges are
/// rejected unless flagged; periodic lattices with an extent of 2 produce
/// them legitimately (two distinct bonds between the same pair of sites).
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  Graph(std::size_t num_vertices, std::vector<Edge> edges, Boundary boundary = Boundary::open,
        bool allow_parallel_edges = false)
      : num_vertices_(num_vertices),
        edges_(std::move(edges)),
        boundary_(boundary),
        allow_parallel_(allow_parallel_edges) {
    for (const auto& [u, v] : edges_) {
      if (u >= num_vertices_ || v >= num_vertices_) throw InvalidInput("graph edge endpoint out of range");
      if (u == v) throw InvalidInput("graph self-loop at vertex " + std::to_string(u));
    }
    if (!allow_parallel_ && has_parallel_edges()) throw InvalidInput("graph has duplicate edges");
  }

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  Boundary boundary() const { return boundary_; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(num_vertices_, 0);
    for (const auto& [u, v] : edges_) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  /// Edge list with each pair ordered (min, max), sorted; the multiset that
  /// identifies the graph up to edge order.
  std::vector<Edge> normalized_edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [u, v] : edges_) out.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_parallel_edges() const {
    auto n = normalized_edges();
    return std::adjacent_find(n.begin(), n.end()) != n.end();
  }

 private:
  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  Boundary boundary_ = Boundary::open;
  bool allow_parallel_ = false;
};

struct LatticeSpec {
  LatticeKind kind = LatticeKind::chain;
  std::vector<std::size_t> dims;
  Boundary boundary = Boundary::periodic;
};

inline std::string_view to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::chain: return "chain";
    case LatticeKind::square: return "square";
    case LatticeKind::honeycomb: return "honeycomb";
    case LatticeKind::triangular: return "triangular";
    case LatticeKind::kagome: return "kagome";
    case LatticeKind::cubic: return "cubic";
    case LatticeKind::colex2: return "colex2";
  }
  return "?";
}

inline std::size_t axis_count(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::chain: return 1;
    case LatticeKind::cubic: return 3;
    default: return 2;
  }
}

inline std::vector<std::size_t> parse_extents(std::string_view text) {
  std::vector<std::size_t> dims;
  std::size_t start = 0;
  while (true) {
    auto end = text.find('x', start);
    auto tok = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("bad lattice extent '" + std::string(tok) + "' in '" + std::string(text) + "'");
    }
    dims.push_back(value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return dims;
}

inline Boundary parse_boundary(std::string_view text) {
  if (text == "periodic") return Boundary::periodic;
  if (text == "open") return Boundary::open;
  throw ParseError("boundary must be 'periodic' or 'open', got '" + std::string(text) + "'");
}

/// Parses `kind:EXTENTS[:boundary]`, e.g. `chain:8:periodic`, `square:3x3:open`,
/// `cubic:2x2x2`. Boundary defaults to periodic.
inline LatticeSpec parse_lattice_spec(std::string_view text) {
  auto c1 = text.find(':');
  if (c1 == std::string_view::npos) throw ParseError("lattice spec '" + std::string(text) + "' needs kind:extents");
  auto kind_str = text.substr(0, c1);
  auto rest = text.substr(c1 + 1);
  auto c2 = rest.find(':');
  LatticeSpec spec;
  static constexpr std::array kinds{LatticeKind::chain,      LatticeKind::square, LatticeKind::honeycomb,
                                    LatticeKind::triangular, LatticeKind::kagome, LatticeKind::cubic,
                                    LatticeKind::colex2};
  auto it = std::find_if(kinds.begin(), kinds.end(), [&](auto k) { return to_string(k) == kind_str; });
  if (it == kinds.end()) throw ParseError("unknown lattice kind '" + std::string(kind_str) + "'");
  spec.kind = *it;
  spec.dims = parse_extents(rest.substr(0, c2));
  if (c2 != std::string_view::npos) spec.boundary = parse_boundary(rest.substr(c2 + 1));
  return spec;
}

inline void validate(const LatticeSpec& spec) {
  const auto axes = axis_count(spec.kind);
  if (spec.dims.size() != axes) {
    throw UnsupportedDims(std::string(to_string(spec.kind)) + " lattice needs " + std::to_string(axes) +
                          " extent(s), got " + std::to_string(spec.dims.size()));
  }
  for (auto d : spec.dims) {
    if (d == 0) throw UnsupportedDims("lattice extents must be positive");
  }
}

namespace detail {

// A bond joins sublattice `from` in cell c to sublattice `to` in cell c + offset.
struct Bond {
  std::size_t from;
  std::size_t to;
  std::array<int, 3> offset;
};

struct UnitCell {
  std::size_t sites;
  std::vector<Bond> bonds;
};

inline UnitCell unit_cell(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::chain:
      return {1, {{0, 0, {1, 0, 0}}}};
    case LatticeKind::square:
      return {1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}}};
    case LatticeKind::cubic:
      return {1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}}};
    case LatticeKind::triangular:
      return {1, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {1, -1, 0}}}};
    case LatticeKind::honeycomb:
    case LatticeKind::colex2:
      // A = 0, B = 1; A(x,y) bonds to B(x,y), B(x-1,y), B(x,y-1).
      return {2, {{0, 1, {0, 0, 0}}, {0, 1, {-1, 0, 0}}, {0, 1, {0, -1, 0}}}};
    case LatticeKind::kagome:
      // A = 0, B = 1, C = 2; up triangle ABC in one cell, down triangle
      // B(x,y), A(x+1,y), C(x+1,y-1).
      return {3,
              {{0, 1, {0, 0, 0}},
               {0, 2, {0, 0, 0}},
               {1, 2, {0, 0, 0}},
               {1, 0, {1, 0, 0}},
               {0, 2, {0, -1, 0}},
               {1, 2, {1, -1, 0}}}};
  }
  return {0, {}};
}

// Cell coordinates are numbered with axis 0 varying fastest.
class CellIndexer {
 public:
  explicit CellIndexer(std::vector<std::size_t> dims) : dims_(std::move(dims)) {}

  std::size_t count() const {
    std::size_t n = 1;
    for (auto d : dims_) n *= d;
    return n;
  }
  std::array<std::size_t, 3> coords(std::size_t cell) const {
    std::array<std::size_t, 3> c{0, 0, 0};
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      c[a] = cell % dims_[a];
      cell /= dims_[a];
    }
    return c;
  }
  /// Cell at coords + offset; nullopt when an open boundary is crossed.
  std::optional<std::size_t> shifted(const std::array<std::size_t, 3>& c, const std::array<int, 3>& off,
                                     Boundary boundary) const {
    std::size_t index = 0, stride = 1;
    for (std::size_t a = 0; a < dims_.size(); ++a) {
      const auto d = static_cast<long>(dims_[a]);
      long x = static_cast<long>(c[a]) + off[a];
      if (x < 0 || x >= d) {
        if (boundary == Boundary::open) return std::nullopt;
        x = ((x % d) + d) % d;
      }
      index += static_cast<std::size_t>(x) * stride;
      stride *= dims_[a];
    }
    return index;
  }

 private:
  std::vector<std::size_t> dims_;
};

// Hypergraph from XOR-accumulated rows; warns when collapsing shrank a row
// below `expected_size`, and flags duplicates when they occur.
inline Hypergraph hypergraph_from_rows(std::size_t num_vertices, std::vector<BitVector> rows,
                                       std::size_t expected_size, std::string_view what) {
  BitMatrix m(num_vertices);
  bool collapsed = false;
  for (auto& r : rows) {
    if (r.popcount() != expected_size) collapsed = true;
    if (r.none()) throw UnsupportedDims(std::string(what) + ": extents too small, a hyperedge cancels to empty");
    m.append_row(std::move(r));
  }
  if (collapsed) warn(std::string(what) + ": periodic wrapping collapsed repeated sites in some hyperedges");
  const bool dup = Hypergraph::has_duplicate_rows(m);
  if (dup) warn(std::string(what) + ": extents produce coinciding hyperedges");
  return Hypergraph(num_vertices, std::move(m), dup);
}

}  // namespace detail

/// Vertex of sublattice s in cell c is c * sites_per_cell + s; cells are
/// numbered with axis 0 fastest. Bonds across an open boundary are omitted.
inline Graph build_graph(const LatticeSpec& spec) {
  validate(spec);
  const auto cell = detail::unit_cell(spec.kind);
  const detail::CellIndexer idx(spec.dims);
  std::vector<Graph::Edge> edges;
  for (std::size_t c = 0; c < idx.count(); ++c) {
    const auto xyz = idx.coords(c);
    for (const auto& b : cell.bonds) {
      auto other = idx.shifted(xyz, b.offset, spec.boundary);
      if (!other) continue;
      const auto u = c * cell.sites + b.from;
      const auto v = *other * cell.sites + b.to;
      if (u == v) {
        throw UnsupportedDims(std::string(to_string(spec.kind)) +
                              ": periodic extent of 1 wraps a bond onto its own site");
      }
      edges.emplace_back(u, v);
    }
  }
  Graph probe(idx.count() * cell.sites, edges, spec.boundary, true);
  const bool parallel = probe.has_parallel_edges();
  if (parallel) warn(std::string(to_string(spec.kind)) + ": periodic extent of 2 doubles some bonds");
  return Graph(idx.count() * cell.sites, std::move(edges), spec.boundary, parallel);
}

/// Toric code on a graph: one hypergraph vertex per graph edge (the qubits)
/// and one hyperedge per graph vertex holding its incident edges (the star
/// operator A_v). Graph vertices with no edges are skipped with a warning.
inline Hypergraph toric_code_hypergraph(const Graph& g) {
  std::vector<BitVector> stars(g.num_vertices(), BitVector(g.num_edges()));
  for (std::size_t q = 0; q < g.num_edges(); ++q) {
    stars[g.edges()[q].first].set(q);
    stars[g.edges()[q].second].set(q);
  }
  BitMatrix m(g.num_edges());
  std::size_t skipped = 0;
  for (auto& s : stars) {
    if (s.none()) {
      ++skipped;
      continue;
    }
    m.append_row(std::move(s));
  }
  if (skipped > 0) warn("toric code: skipped " + std::to_string(skipped) + " isolated graph vertex(es)");
  const bool dup = Hypergraph::has_duplicate_rows(m);
  return Hypergraph(g.num_edges(), std::move(m), dup);
}

/// Reads a hypergraph whose edges all have size 2 back as a (multi)graph.
inline Graph graph_from_hypergraph(const Hypergraph& h) {
  std::vector<Graph::Edge> edges;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto vs = h.edge_vertices(e);
    if (vs.size() != 2) throw InvalidInput("hyperedge " + std::to_string(e + 1) + " is not a pair");
    edges.emplace_back(vs[0], vs[1]);
  }
  return Graph(h.num_vertices(), std::move(edges), Boundary::open, true);
}

/// Color code on the periodic three-colorable hexagonal lattice (2-colex).
/// Sites follow the honeycomb numbering of build_graph; plaquette (x,y) is
/// {A(x,y), B(x,y), B(x-1,y), A(x,y+1), A(x-1,y+1), B(x-1,y+1)} and is
/// hyperedge x + Lx*y. Extents that are not multiples of 3 still give a
/// valid plaquette hypergraph but lose the 3-coloring; that is warned about.
inline Hypergraph colex2_hypergraph(const LatticeSpec& spec) {
  if (spec.kind != LatticeKind::colex2) throw InvalidInput("colex2_hypergraph needs a colex2 lattice spec");
  validate(spec);
  if (spec.boundary != Boundary::periodic) throw UnsupportedDims("colex2 is only defined with periodic boundaries");
  if (spec.dims[0] < 2 || spec.dims[1] < 2) throw UnsupportedDims("colex2 extents must be at least 2");
  if (spec.dims[0] % 3 != 0 || spec.dims[1] % 3 != 0) {
    warn("colex2: extents not multiples of 3; the plaquettes are not three-colorable on this torus");
  }
  const detail::CellIndexer idx(spec.dims);
  const std::size_t sites = 2 * idx.count();
  std::vector<BitVector> rows;
  static constexpr std::array<std::pair<std::size_t, std::array<int, 3>>, 6> corners{{
      {0, {0, 0, 0}},
      {1, {0, 0, 0}},
      {1, {-1, 0, 0}},
      {0, {0, 1, 0}},
      {0, {-1, 1, 0}},
      {1, {-1, 1, 0}},
  }};
  for (std::size_t c = 0; c < idx.count(); ++c) {
    BitVector row(sites);
    const auto xyz = idx.coords(c);
    for (const auto& [sub, off] : corners) row.flip(*idx.shifted(xyz, off, Boundary::periodic) * 2 + sub);
    rows.push_back(std::move(row));
  }
  return detail::hypergraph_from_rows(sites, std::move(rows), 6, "colex2");
}

/// Periodic hypercubic lattice in d dimensions with one hyperedge per unit
/// cell holding its 2^d corner sites (site and cell indices coincide, axis 0
/// fastest). Corners that coincide under wrapping cancel mod 2.
inline Hypergraph selfdual_hypercubic(std::size_t d, const std::vector<std::size_t>& dims) {
  if (d == 0 || dims.size() != d) throw UnsupportedDims("hypercubic model needs d >= 1 and d extents");
  if (d > 16) throw UnsupportedDims("hypercubic model supports d <= 16");
  std::size_t sites = 1;
  for (auto n : dims) {
    if (n < 2) throw UnsupportedDims("hypercubic extents must be at least 2");
    sites *= n;
  }
  std::vector<BitVector> rows;
  rows.reserve(sites);
  for (std::size_t cell = 0; cell < sites; ++cell) {
    BitVector row(sites);
    for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
      std::size_t rem = cell, index = 0, stride = 1;
      for (std::size_t a = 0; a < d; ++a) {
        const std::size_t x = (rem % dims[a] + ((corner >> a) & 1)) % dims[a];
        rem /= dims[a];
        index += x * stride;
        stride *= dims[a];
      }
      row.flip(index);
    }
    rows.push_back(std::move(row));
  }
  return detail::hypergraph_from_rows(sites, std::move(rows), std::size_t{1} << d, "hypercubic");
}

/// Periodic chain with qubits on bonds: n vertices, hyperedge i = {i, i+1 mod n}.
inline Hypergraph selfdual_chain(std::size_t n) {
  if (n < 2) throw UnsupportedDims("chain model needs n >= 2");
  return selfdual_hypercubic(1, {n});
}

/// Periodic l x l square lattice, qubits on sites, one 4-site hyperedge per plaquette.
inline Hypergraph selfdual_plaquette(std::size_t l) {
  if (l < 2) throw UnsupportedDims("plaquette model needs l >= 2");
  return selfdual_hypercubic(2, {l, l});
}

}  // namespace hyperdual
