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

#include "hyperdual/hypergraph.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

#include "hyperdual/lattice.hpp"
#include "support/oracles.hpp"

using namespace hyperdual;
using hyperdual::oracle::five_vertex;

namespace {

std::vector<std::vector<std::size_t>> edge_lists(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t e = 0; e < h.num_edges(); ++e) out.push_back(h.edge_vertices(e));
  return out;
}

}  // namespace

TEST(hypergraph, construction_invariants) {
  EXPECT_THROW(Hypergraph::from_edges(3, {{0}, {}}), InvalidInput);
  EXPECT_THROW(Hypergraph::from_edges(3, {{0, 3}}), InvalidInput);
  EXPECT_THROW(Hypergraph::from_edges(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(Hypergraph::from_edges(3, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_NO_THROW(Hypergraph::from_edges(3, {{0, 1}, {1, 0}}, /*allow_duplicate_edges=*/true));
  EXPECT_THROW(Hypergraph(4, BitMatrix(1, 3)), DimensionMismatch);
}

TEST(hypergraph, degrees) {
  auto h = five_vertex();
  EXPECT_EQ(h.edge_degrees(), (std::vector<std::size_t>{1, 4, 2, 2}));
  EXPECT_EQ(h.vertex_degrees(), (std::vector<std::size_t>{2, 2, 2, 1, 2}));
  EXPECT_TRUE(h.isolated_vertices().empty());
}

TEST(hypergraph, labels_do_not_affect_equality) {
  auto h = five_vertex();
  auto labelled = h.with_labels({"a", "b", "c", "d", "e"}, {});
  EXPECT_EQ(labelled.vertex_labels().size(), 5u);
  EXPECT_EQ(labelled, h);
  EXPECT_THROW(h.with_labels({"a"}, {}), DimensionMismatch);
}

TEST(dual, five_vertex) {
  auto d = dual(five_vertex());
  EXPECT_EQ(d.num_vertices(), 4u);
  ASSERT_EQ(d.num_edges(), 5u);
  // 1-indexed: {1,2}, {2,3}, {3,4}, {2}, {2,4}.
  EXPECT_EQ(edge_lists(d), (std::vector<std::vector<std::size_t>>{{0, 1}, {1, 2}, {2, 3}, {1}, {1, 3}}));
  EXPECT_EQ(d.incidence(), five_vertex().incidence().transposed());
}

TEST(dual, single_loop_is_fixed) {
  auto h = Hypergraph::from_edges(1, {{0}});
  EXPECT_EQ(dual(h), h);
}

TEST(dual, involution) {
  auto h = five_vertex();
  EXPECT_EQ(dual(dual(h)), h);
}

TEST(dual, isolated_vertices_dropped_with_warning) {
  oracle::WarningCapture warnings;
  auto h = Hypergraph::from_edges(4, {{0, 1}, {1}});
  auto d = dual(h);
  EXPECT_EQ(d.num_vertices(), 2u);
  EXPECT_EQ(d.num_edges(), 2u);
  ASSERT_EQ(warnings.messages().size(), 1u);
  EXPECT_NE(warnings.messages()[0].find("dropped 2"), std::string::npos);
}

TEST(orthogonal, five_vertex) {
  auto o = orthogonal(five_vertex());
  EXPECT_EQ(o.num_vertices(), 5u);
  ASSERT_EQ(o.num_edges(), 1u);
  EXPECT_EQ(o.edge_vertices(0), (std::vector<std::size_t>{1, 2, 4}));
}

TEST(orthogonal, full_rank_gives_no_edges) {
  auto h = Hypergraph(4, BitMatrix::identity(4));
  EXPECT_EQ(orthogonal(h).num_edges(), 0u);
}

TEST(orthogonal, single_pair) {
  auto o = orthogonal(Hypergraph::from_edges(2, {{0, 1}}));
  ASSERT_EQ(o.num_edges(), 1u);
  EXPECT_EQ(o.edge_vertices(0), (std::vector<std::size_t>{0, 1}));
}

TEST(independent_set, five_vertex_all_edges) {
  auto s = independent_set(five_vertex());
  EXPECT_EQ(s.rank, 4u);
  EXPECT_EQ(s.edge_indices, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(independent_set, duplicate_keeps_first) {
  auto h = Hypergraph::from_edges(3, {{0, 2}, {0, 2}}, true);
  auto s = independent_set(h);
  EXPECT_EQ(s.edge_indices, (std::vector<std::size_t>{0}));
}

TEST(independent_set, periodic_four_cycle_toric_code) {
  auto tc = toric_code_hypergraph(build_graph(parse_lattice_spec("chain:4:periodic")));
  ASSERT_EQ(tc.num_edges(), 4u);
  auto s = independent_set(tc);
  EXPECT_EQ(s.rank, 3u);
  EXPECT_EQ(s.edge_indices, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(independent_set, greedy_is_input_order) {
  // e3 = e1 + e2; reordering decides which one is dropped.
  auto h = Hypergraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(independent_set(h).edge_indices, (std::vector<std::size_t>{0, 1}));
  auto h2 = Hypergraph::from_edges(3, {{0, 2}, {0, 1}, {1, 2}});
  EXPECT_EQ(independent_set(h2).edge_indices, (std::vector<std::size_t>{0, 1}));
}

TEST(relabel, rejects_non_permutations) {
  auto h = five_vertex();
  EXPECT_THROW(relabel(h, {0, 0, 1, 2, 3}, {0, 1, 2, 3}), InvalidInput);
  EXPECT_THROW(relabel(h, {0, 1, 2, 3, 4}, {0, 1, 2}), InvalidInput);
  EXPECT_EQ(relabel(h, {0, 1, 2, 3, 4}, {0, 1, 2, 3}), h);
}

TEST(is_self_dual, chain_shift_witness) {
  for (std::size_t n : {2u, 3u, 5u, 8u, 17u, 64u}) {
    auto h = selfdual_chain(n);
    auto w = is_self_dual(h);
    ASSERT_TRUE(w) << "n=" << n;
    EXPECT_EQ(relabel(dual(h), w->vertex_map, w->edge_map), h);
  }
  // The shift-by-one labelling is itself a witness: dual edge i = {e_{i-1}, e_i}.
  const std::size_t n = 8;
  std::vector<std::size_t> vmap(n), emap(n);
  for (std::size_t i = 0; i < n; ++i) {
    vmap[i] = i;
    emap[i] = (i + n - 1) % n;
  }
  EXPECT_EQ(relabel(dual(selfdual_chain(n)), vmap, emap), selfdual_chain(n));
}

TEST(is_self_dual, plaquette_lattices) {
  for (std::size_t l : {2u, 3u, 4u, 6u, 8u}) {
    auto h = selfdual_plaquette(l);
    auto w = is_self_dual(h);
    ASSERT_TRUE(w) << "l=" << l;
    EXPECT_EQ(relabel(dual(h), w->vertex_map, w->edge_map), h);
  }
}

TEST(is_self_dual, five_vertex_is_not) { EXPECT_FALSE(is_self_dual(five_vertex())); }

TEST(is_self_dual, degree_mismatch_rejected_early) {
  // Square matrix, but one vertex has degree 3 and no edge has size 3.
  auto h = Hypergraph::from_edges(3, {{0, 1}, {0, 2}, {0}});
  EXPECT_FALSE(is_self_dual(h, 1));
  EXPECT_FALSE(is_self_dual(Hypergraph::from_edges(3, {{0, 1}, {1, 2}})));
}

TEST(is_self_dual, budget_exceeded_signals_unknown) {
  auto h = selfdual_plaquette(4);
  EXPECT_THROW(is_self_dual(h, 2), SearchBudgetExceeded);
}

TEST(hypergraph_properties, random_instances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng() % 16;
    const std::size_t n = 1 + rng() % 16;
    auto h = oracle::random_hypergraph(rng, k, n);
    const auto r = rank(h);

    EXPECT_EQ(dual(h).num_edges() + h.isolated_vertices().size(), k);
    if (h.isolated_vertices().empty()) {
      EXPECT_EQ(dual(h).incidence(), h.incidence().transposed());
      EXPECT_EQ(dual(dual(h)), h);
    }

    auto o = orthogonal(h);
    EXPECT_EQ(r + o.num_edges(), k);
    for (std::size_t a = 0; a < h.num_edges(); ++a) {
      for (std::size_t b = 0; b < o.num_edges(); ++b) EXPECT_FALSE(h.edge(a).dot(o.edge(b)));
    }

    auto s = independent_set(h);
    EXPECT_EQ(s.rank, r);
    EXPECT_EQ(rank(restrict_edges(h, s.edge_indices)), r);
    EXPECT_EQ(r, oracle::brute_force_rank(h.incidence()));
  }
}
