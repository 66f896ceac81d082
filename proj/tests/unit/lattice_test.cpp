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

#include "hyperdual/lattice.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "gtest/gtest.h"

#include "support/oracles.hpp"

using namespace hyperdual;

namespace {

Graph lattice(std::string_view spec) { return build_graph(parse_lattice_spec(spec)); }

std::set<std::array<std::size_t, 3>> triangles(const Graph& g) {
  std::vector<std::set<std::size_t>> adj(g.num_vertices());
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::set<std::array<std::size_t, 3>> out;
  for (std::size_t a = 0; a < g.num_vertices(); ++a) {
    for (auto b : adj[a]) {
      for (auto c : adj[b]) {
        if (a < b && b < c && adj[a].count(c)) out.insert({a, b, c});
      }
    }
  }
  return out;
}

}  // namespace

TEST(lattice_spec, parsing) {
  auto s = parse_lattice_spec("square:3x4:open");
  EXPECT_EQ(s.kind, LatticeKind::square);
  EXPECT_EQ(s.dims, (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(s.boundary, Boundary::open);
  EXPECT_EQ(parse_lattice_spec("cubic:2x2x2").boundary, Boundary::periodic);

  EXPECT_THROW(parse_lattice_spec("square"), ParseError);
  EXPECT_THROW(parse_lattice_spec("pentagon:3x3"), ParseError);
  EXPECT_THROW(parse_lattice_spec("square:3xx3"), ParseError);
  EXPECT_THROW(parse_lattice_spec("square:3x3:twisted"), ParseError);
  EXPECT_THROW(lattice("square:3"), UnsupportedDims);
  EXPECT_THROW(lattice("chain:0"), UnsupportedDims);
  EXPECT_THROW(lattice("cubic:2x2"), UnsupportedDims);
}

TEST(lattice, chain_periodic) {
  auto g = lattice("chain:4");
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 4u);
  EXPECT_EQ(g.normalized_edges(), (std::vector<Graph::Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
}

TEST(lattice, chain_open) {
  auto g = lattice("chain:4:open");
  EXPECT_EQ(g.num_edges(), 3u);
}

TEST(lattice, periodic_extent_one_rejected) { EXPECT_THROW(lattice("chain:1"), UnsupportedDims); }

TEST(lattice, square_two_by_two_has_doubled_bonds) {
  oracle::WarningCapture warnings;
  auto g = lattice("square:2x2");
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 8u);
  EXPECT_TRUE(g.has_parallel_edges());
  EXPECT_FALSE(warnings.messages().empty());
}

TEST(lattice, coordination_numbers) {
  struct Case {
    const char* spec;
    std::size_t vertices, edges, degree;
  };
  const Case cases[] = {
      {"square:4x4", 16, 32, 4},    {"honeycomb:2x2", 8, 12, 3}, {"honeycomb:3x4", 24, 36, 3},
      {"triangular:3x3", 9, 27, 6}, {"kagome:3x3", 27, 54, 4},   {"cubic:3x3x3", 27, 81, 6},
  };
  for (const auto& c : cases) {
    auto g = lattice(c.spec);
    EXPECT_EQ(g.num_vertices(), c.vertices) << c.spec;
    EXPECT_EQ(g.num_edges(), c.edges) << c.spec;
    for (auto d : g.degrees()) EXPECT_EQ(d, c.degree) << c.spec;
    EXPECT_FALSE(g.has_parallel_edges()) << c.spec;
  }
}

TEST(lattice, kagome_is_corner_sharing_triangles) {
  auto g = lattice("kagome:3x3");
  EXPECT_EQ(triangles(g).size(), 18u);
}

TEST(lattice, deterministic) {
  EXPECT_EQ(lattice("kagome:3x4").edges(), lattice("kagome:3x4").edges());
  EXPECT_EQ(toric_code_hypergraph(lattice("honeycomb:3x3")), toric_code_hypergraph(lattice("honeycomb:3x3")));
}

TEST(graph, invariants) {
  EXPECT_THROW(Graph(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidInput);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_NO_THROW(Graph(3, {{0, 1}, {1, 0}}, Boundary::open, true));
}

TEST(toric_code, open_three_by_three) {
  auto tc = toric_code_hypergraph(lattice("square:3x3:open"));
  EXPECT_EQ(tc.num_vertices(), 12u);
  ASSERT_EQ(tc.num_edges(), 9u);
  auto sizes = tc.edge_degrees();
  EXPECT_EQ(std::count(sizes.begin(), sizes.end(), 2u), 4);
  EXPECT_EQ(std::count(sizes.begin(), sizes.end(), 3u), 4);
  EXPECT_EQ(std::count(sizes.begin(), sizes.end(), 4u), 1);
  EXPECT_EQ(rank(tc), 8u);
}

TEST(toric_code, dual_recovers_graph) {
  for (const char* spec : {"square:3x3:open", "square:4x4", "honeycomb:3x3", "kagome:3x3", "cubic:3x3x3", "chain:5"}) {
    auto g = lattice(spec);
    auto back = graph_from_hypergraph(dual(toric_code_hypergraph(g)));
    EXPECT_EQ(back.normalized_edges(), g.normalized_edges()) << spec;
  }
}

TEST(toric_code, star_rank_is_vertices_minus_components) {
  // Connected graphs: the product of all stars is the identity.
  for (const char* spec : {"square:4x4", "honeycomb:2x3", "cubic:2x2x2", "triangular:3x3"}) {
    auto g = lattice(spec);
    EXPECT_EQ(rank(toric_code_hypergraph(g)), g.num_vertices() - 1) << spec;
  }
}

TEST(toric_code, isolated_graph_vertex_skipped) {
  oracle::WarningCapture warnings;
  auto tc = toric_code_hypergraph(Graph(4, {{0, 1}, {1, 2}}));
  EXPECT_EQ(tc.num_edges(), 3u);
  EXPECT_EQ(warnings.messages().size(), 1u);
}

TEST(colex2, plaquettes_are_hexagons) {
  auto h = colex2_hypergraph(parse_lattice_spec("colex2:3x3"));
  EXPECT_EQ(h.num_vertices(), 18u);
  EXPECT_EQ(h.num_edges(), 9u);
  for (auto s : h.edge_degrees()) EXPECT_EQ(s, 6u);
  for (auto d : h.vertex_degrees()) EXPECT_EQ(d, 3u);
  // Each hexagon is a cycle of the underlying honeycomb graph.
  auto g = lattice("honeycomb:3x3");
  std::set<Graph::Edge> bonds;
  for (auto e : g.normalized_edges()) bonds.insert(e);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto vs = h.edge_vertices(e);
    std::size_t inside = 0;
    for (auto a : vs) {
      for (auto b : vs) inside += a < b && bonds.count({a, b});
    }
    EXPECT_EQ(inside, 6u);
  }
}

TEST(colex2, dual_is_triangular_lattice) {
  auto h = colex2_hypergraph(parse_lattice_spec("colex2:6x6"));
  auto d = dual(h);
  ASSERT_EQ(d.num_vertices(), 36u);
  ASSERT_EQ(d.num_edges(), 72u);
  std::set<std::array<std::size_t, 3>> got;
  for (std::size_t e = 0; e < d.num_edges(); ++e) {
    auto vs = d.edge_vertices(e);
    ASSERT_EQ(vs.size(), 3u);
    got.insert({vs[0], vs[1], vs[2]});
  }
  EXPECT_EQ(got, triangles(lattice("triangular:6x6")));
}

TEST(colex2, two_by_two_wraps) {
  oracle::WarningCapture warnings;
  auto h = colex2_hypergraph(parse_lattice_spec("colex2:2x2"));
  EXPECT_EQ(h.num_vertices(), 8u);
  EXPECT_EQ(h.num_edges(), 4u);
  for (auto s : h.edge_degrees()) EXPECT_EQ(s, 6u);
  EXPECT_EQ(warnings.messages().size(), 1u);
}

TEST(colex2, rejects_bad_specs) {
  EXPECT_THROW(colex2_hypergraph(parse_lattice_spec("colex2:1x3")), UnsupportedDims);
  EXPECT_THROW(colex2_hypergraph(parse_lattice_spec("colex2:3x3:open")), UnsupportedDims);
  EXPECT_THROW(colex2_hypergraph(parse_lattice_spec("honeycomb:3x3")), InvalidInput);
}

TEST(selfdual_families, chain_edges) {
  auto h = selfdual_chain(5);
  EXPECT_EQ(h.num_vertices(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    auto vs = h.edge_vertices(i);
    std::set<std::size_t> want{i, (i + 1) % 5};
    EXPECT_EQ(std::set<std::size_t>(vs.begin(), vs.end()), want);
  }
  EXPECT_THROW(selfdual_chain(1), UnsupportedDims);
}

TEST(selfdual_families, plaquette_edges) {
  auto h = selfdual_plaquette(3);
  EXPECT_EQ(h.num_vertices(), 9u);
  EXPECT_EQ(h.num_edges(), 9u);
  // Cell (1,2) has corners (1,2), (2,2), (1,0), (2,0).
  EXPECT_EQ(h.edge_vertices(1 + 3 * 2), (std::vector<std::size_t>{1, 2, 7, 8}));
  EXPECT_THROW(selfdual_plaquette(1), UnsupportedDims);
}

TEST(selfdual_families, hypercubic_smallest_collapses_to_identical_edges) {
  oracle::WarningCapture warnings;
  auto h = selfdual_hypercubic(3, {2, 2, 2});
  EXPECT_EQ(h.num_vertices(), 8u);
  ASSERT_EQ(h.num_edges(), 8u);
  for (std::size_t e = 0; e < 8; ++e) EXPECT_EQ(h.edge_degree(e), 8u);
  EXPECT_EQ(rank(h), 1u);
  EXPECT_FALSE(warnings.messages().empty());
}

TEST(selfdual_families, hypercubic_three_dimensional) {
  auto h = selfdual_hypercubic(3, {3, 3, 3});
  for (auto s : h.edge_degrees()) EXPECT_EQ(s, 8u);
  for (auto d : h.vertex_degrees()) EXPECT_EQ(d, 8u);
  EXPECT_TRUE(is_self_dual(h));
  EXPECT_THROW(selfdual_hypercubic(2, {3}), UnsupportedDims);
  EXPECT_THROW(selfdual_hypercubic(2, {3, 1}), UnsupportedDims);
}

TEST(selfdual_families, plaquette_two_collapses_to_full_edges) {
  oracle::WarningCapture warnings;
  auto h = selfdual_plaquette(2);
  EXPECT_EQ(h.num_vertices(), 4u);
  ASSERT_EQ(h.num_edges(), 4u);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_EQ(h.edge_vertices(e), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_TRUE(is_self_dual(h));
}

TEST(selfdual_families, hypercubic_one_dimensional_is_chain) {
  EXPECT_EQ(selfdual_hypercubic(1, {7}), selfdual_chain(7));
}

TEST(toric_code, periodic_small_clusters) {
  auto cycle = toric_code_hypergraph(lattice("chain:4"));
  EXPECT_EQ(cycle.num_vertices(), 4u);
  for (auto s : cycle.edge_degrees()) EXPECT_EQ(s, 2u);
  auto sq = toric_code_hypergraph(lattice("square:2x2"));
  EXPECT_EQ(sq.num_vertices(), 8u);
  ASSERT_EQ(sq.num_edges(), 4u);
  for (auto s : sq.edge_degrees()) EXPECT_EQ(s, 4u);
}
