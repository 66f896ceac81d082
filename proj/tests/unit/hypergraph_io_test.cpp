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

#include "hyperdual/hypergraph_io.hpp"

#include <filesystem>
#include <fstream>
#include <random>

#include "gtest/gtest.h"

#include "support/oracles.hpp"

using namespace hyperdual;

TEST(hypergraph_io, parses_with_comments_and_blank_lines) {
  auto h = parse_hypergraph(
      "# example\n"
      "\n"
      "K 5\n"
      "E 4\n"
      "e 1\n"
      "  # indented comment\n"
      "e 5 4 2 1\n"
      "e 2\t3\n"
      "e 3 5\r\n");
  EXPECT_EQ(h, oracle::five_vertex());
}

TEST(hypergraph_io, data_file_matches_fixture) {
  auto h = read_hypergraph_file(std::string(HYPERDUAL_DATA_DIR) + "/five_vertex.hg");
  EXPECT_EQ(h, oracle::five_vertex());
}

TEST(hypergraph_io, writes_canonical_text) {
  EXPECT_EQ(to_text(oracle::five_vertex()), "K 5\nE 4\ne 1\ne 1 2 4 5\ne 2 3\ne 3 5\n");
  EXPECT_EQ(to_text(Hypergraph(3, BitMatrix(0, 3))), "K 3\nE 0\n");
}

TEST(hypergraph_io, rejects_malformed_input) {
  const char* bad[] = {
      "",                        // no header
      "K 3\n",                   // no E
      "E 1\nK 3\ne 1\n",         // E before K
      "K 3\nK 3\nE 0\n",         // repeated K
      "K 3\nE 1\n",              // missing edge
      "K 3\nE 1\ne 1\ne 2\n",    // too many edges
      "K 3\nE 1\ne 0\n",         // 0 is not a vertex id
      "K 3\nE 1\ne 4\n",         // out of range
      "K 3\nE 1\ne\n",           // empty edge
      "K 3\nE 1\ne 1 1\n",       // repeated vertex
      "K 3\nE 2\ne 1 2\ne 2 1\n",  // duplicate edge
      "K x\nE 0\n",              // not a number
      "K -1\nE 0\n",
      "K 3 4\nE 0\n",
      "K 3\nE 1\nf 1\n",         // unknown record
      "e 1\nK 3\nE 1\n",         // edge before header
  };
  for (const char* text : bad) EXPECT_THROW(parse_hypergraph(text), ParseError) << text;
}

TEST(hypergraph_io, duplicates_allowed_on_request) {
  auto h = parse_hypergraph("K 2\nE 2\ne 1 2\ne 2 1\n", /*allow_duplicate_edges=*/true);
  EXPECT_EQ(h.num_edges(), 2u);
  EXPECT_TRUE(Hypergraph::has_duplicate_rows(h.incidence()));
}

TEST(hypergraph_io, missing_file_is_io_error) {
  EXPECT_THROW(read_hypergraph_file("/nonexistent/dir/none.hg"), IoError);
}

TEST(hypergraph_io, round_trip_random) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto h = oracle::random_hypergraph(rng, 1 + rng() % 70, rng() % 20);
    auto text = to_text(h);
    auto back = parse_hypergraph(text);
    EXPECT_EQ(back, h);
    EXPECT_EQ(to_text(back), text);
  }
}

TEST(hypergraph_io, file_round_trip) {
  auto path = std::filesystem::temp_directory_path() / "hyperdual_io_test.hg";
  {
    std::ofstream out(path);
    write_hypergraph(out, oracle::five_vertex());
  }
  EXPECT_EQ(read_hypergraph_file(path.string()), oracle::five_vertex());
  std::filesystem::remove(path);
}
