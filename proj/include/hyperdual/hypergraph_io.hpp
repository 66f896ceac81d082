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

#include <charconv>
#include <optional>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"

// Text format:
//
//   # comment
//   K <num_vertices>
//   E <num_edges>
//   e <v1> <v2> ...      (one line per edge, 1-indexed vertex ids)
//
// Blank lines and lines starting with '#' are ignored. Emission writes
// vertex ids in ascending order, so parse -> write -> parse is the identity.

namespace hyperdual {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                     std::string(tok) + "'");
  }
  return value;
}

}  // namespace detail

inline Hypergraph parse_hypergraph(std::istream& in, bool allow_duplicate_edges = false) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> k, n;
  std::vector<std::vector<std::size_t>> edges;

  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    const auto tag = toks[0];
    if (tag == "K" || tag == "E") {
      if (toks.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected '" + std::string(tag) + " <count>'");
      if (tag == "K") {
        if (k || n) throw ParseError("line " + std::to_string(line_no) + ": 'K' must come first and only once");
        k = detail::parse_count(toks[1], line_no);
      } else {
        if (!k || n) throw ParseError("line " + std::to_string(line_no) + ": 'E' must follow 'K' and appear once");
        n = detail::parse_count(toks[1], line_no);
      }
    } else if (tag == "e") {
      if (!n) throw ParseError("line " + std::to_string(line_no) + ": edge before 'K'/'E' header");
      if (edges.size() == *n) throw ParseError("line " + std::to_string(line_no) + ": more edges than declared E=" + std::to_string(*n));
      if (toks.size() < 2) throw ParseError("line " + std::to_string(line_no) + ": empty edge");
      std::vector<std::size_t> edge;
      for (std::size_t t = 1; t < toks.size(); ++t) {
        auto v = detail::parse_count(toks[t], line_no);
        if (v == 0 || v > *k) {
          throw ParseError("line " + std::to_string(line_no) + ": vertex id " + std::to_string(v) +
                           " outside 1.." + std::to_string(*k));
        }
        edge.push_back(v - 1);
      }
      edges.push_back(std::move(edge));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + std::string(tag) + "'");
    }
  }
  if (!k || !n) throw ParseError("missing 'K' or 'E' header");
  if (edges.size() != *n) {
    throw ParseError("declared E=" + std::to_string(*n) + " but found " + std::to_string(edges.size()) + " edge lines");
  }
  try {
    return Hypergraph::from_edges(*k, edges, allow_duplicate_edges);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

inline Hypergraph parse_hypergraph(std::string_view text, bool allow_duplicate_edges = false) {
  std::istringstream in{std::string(text)};
  return parse_hypergraph(in, allow_duplicate_edges);
}

inline Hypergraph read_hypergraph_file(const std::string& path, bool allow_duplicate_edges = false) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_hypergraph(in, allow_duplicate_edges);
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "K " << h.num_vertices() << '\n' << "E " << h.num_edges() << '\n';
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    out << 'e';
    for (auto v : h.edge_vertices(e)) out << ' ' << v + 1;
    out << '\n';
  }
}

inline std::string to_text(const Hypergraph& h) {
  std::ostringstream out;
  write_hypergraph(out, h);
  return out.str();
}

}  // namespace hyperdual
