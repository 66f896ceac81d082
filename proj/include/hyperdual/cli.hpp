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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hyperdual/duality.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"
#include "hyperdual/hypergraph_io.hpp"
#include "hyperdual/lattice.hpp"

namespace hyperdual::cli {

/// Exit statuses of run().
enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kComputation = 3,
};

struct Command {
  std::string verb;
  /// Path to a hypergraph file, or a generator spec such as `square:3x3:open`.
  std::string input;
  double j = 1.0;
  double h = 0.0;
  double start = 0.5;
  double stop = 1.5;
  double step = 0.05;
  double delta = 1e-3;
  double tol = 1e-9;
  /// Empty writes to the output stream given to run().
  std::string output;
  bool allow_duplicates = false;
  std::size_t budget = kDefaultSelfDualBudget;
  /// scan only: `ising` (-sum X_e - ratio sum Z) or `dual` (dual of the perturbed CSS model).
  std::string model = "ising";
  std::size_t threads = 0;
};

/// Generator specs: any lattice kind (toric code on the lattice graph, or the
/// color code for colex2), `plaquette:L` and `hypercubic:AxBx...`.
inline Hypergraph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto kind = spec.substr(0, colon);
  if (kind == "plaquette" || kind == "hypercubic") {
    if (colon == std::string_view::npos) throw ParseError("'" + std::string(spec) + "' needs extents");
    const auto dims = parse_extents(spec.substr(colon + 1));
    if (kind == "plaquette") {
      if (dims.size() != 1) throw ParseError("plaquette spec is plaquette:L");
      return selfdual_plaquette(dims[0]);
    }
    return selfdual_hypercubic(dims.size(), dims);
  }
  const auto lattice = parse_lattice_spec(spec);
  if (lattice.kind == LatticeKind::colex2) return colex2_hypergraph(lattice);
  return toric_code_hypergraph(build_graph(lattice));
}

inline Hypergraph load_input(const Command& cmd) {
  if (cmd.input.empty()) throw InvalidInput(cmd.verb + " needs an input hypergraph or spec");
  std::error_code ec;
  if (std::filesystem::exists(cmd.input, ec)) return read_hypergraph_file(cmd.input, cmd.allow_duplicates);
  if (cmd.input.find(':') != std::string::npos) return generate(cmd.input);
  throw IoError("no such file '" + cmd.input + "'");
}

/// Graph for tc-robustness: a lattice spec, or a hypergraph file whose edges are pairs.
inline Graph load_graph(const Command& cmd) {
  std::error_code ec;
  if (!std::filesystem::exists(cmd.input, ec) && cmd.input.find(':') != std::string::npos) {
    return build_graph(parse_lattice_spec(cmd.input));
  }
  return graph_from_hypergraph(load_input(cmd));
}

namespace detail {

template <class Fn>
void emit(const Command& cmd, std::ostream& out, Fn&& write) {
  if (cmd.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(cmd.output);
  if (!file) throw IoError("cannot open '" + cmd.output + "' for writing");
  write(file);
  if (!file) throw IoError("write to '" + cmd.output + "' failed");
}

inline void validate(const Command& cmd) {
  if (!(cmd.j > 0)) throw InvalidInput("--j must be positive");
  if (!(cmd.h >= 0)) throw InvalidInput("--h must be non-negative");
  if (!(cmd.tol > 0)) throw InvalidInput("--tol must be positive");
  if (!(cmd.delta > 0)) throw InvalidInput("--delta must be positive");
}

inline void print_scan_summary(const ScanResult& r, std::ostream& err) {
  if (r.critical_estimate) {
    err << "critical estimate " << format_real(*r.critical_estimate) << " (chi_f peak)";
    if (r.curvature_estimate) err << ", energy curvature " << format_real(*r.curvature_estimate);
    err << '\n';
  } else {
    err << "no critical estimate: chi_f is flat over the grid\n";
  }
}

inline int dispatch(const Command& cmd, std::ostream& out, std::ostream& err) {
  validate(cmd);
  const auto& v = cmd.verb;
  if (v == "dual" || v == "ortho" || v == "generate") {
    const Hypergraph h = load_input(cmd);
    const Hypergraph result = v == "dual" ? dual(h) : v == "ortho" ? orthogonal(h) : h;
    emit(cmd, out, [&](std::ostream& o) { write_hypergraph(o, result); });
    return kOk;
  }
  if (v == "check-selfdual") {
    const Hypergraph h = load_input(cmd);
    std::optional<SelfDualWitness> w;
    try {
      w = is_self_dual(h, cmd.budget);
    } catch (const SearchBudgetExceeded& e) {
      emit(cmd, out, [](std::ostream& o) { o << "UNKNOWN\n"; });
      err << "hyperdual: " << e.what() << '\n';
      return kComputation;
    }
    emit(cmd, out, [&](std::ostream& o) {
      if (!w) {
        o << "NOT-SELF-DUAL\n";
        return;
      }
      // Dual vertex m (= edge m of h) maps to vertex_map[m]; dual edge i
      // (= vertex i of h) maps to edge edge_map[i]. All 1-indexed.
      o << "SELF-DUAL\nvertex_map";
      for (auto x : w->vertex_map) o << ' ' << x + 1;
      o << "\nedge_map";
      for (auto x : w->edge_map) o << ' ' << x + 1;
      o << '\n';
    });
    return kOk;
  }
  if (v == "verify-duality") {
    const auto report = verify_duality(load_input(cmd), cmd.j, cmd.h, cmd.tol);
    emit(cmd, out, [&](std::ostream& o) { write_report(o, report); });
    if (!report.passed) {
      err << "hyperdual: spectra differ by " << format_real(report.max_abs_deviation) << " > tolerance "
          << format_real(cmd.tol) << '\n';
      return kCheckFailed;
    }
    return kOk;
  }
  if (v == "scan" || v == "tc-robustness") {
    const auto grid = make_grid(cmd.start, cmd.stop, cmd.step);
    ScanOptions opts;
    opts.delta = cmd.delta;
    opts.threads = cmd.threads;
    ScanResult r;
    if (v == "scan") {
      const Hypergraph h = load_input(cmd);
      if (cmd.model == "ising") {
        r = scan_transition(ising_model(h), grid, opts);
      } else if (cmd.model == "dual") {
        r = scan_transition(dual_css_model(h), grid, opts);
      } else {
        throw InvalidInput("--model must be 'ising' or 'dual'");
      }
    } else {
      r = estimate_tc_robustness(load_graph(cmd), grid, opts);
    }
    emit(cmd, out, [&](std::ostream& o) { write_csv(o, r); });
    print_scan_summary(r, err);
    return kOk;
  }
  throw InvalidInput("unknown command '" + v + "'");
}

}  // namespace detail

/// Runs one command. Input and usage problems exit 2, failures inside a
/// computation exit 3, a failed duality check exits 1.
inline int run(const Command& cmd, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    return detail::dispatch(cmd, out, err);
  } catch (const ParseError& e) {
    err << "hyperdual: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "hyperdual: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "hyperdual: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "hyperdual: " << e.what() << '\n';
    return kComputation;
  } catch (const std::bad_alloc&) {
    err << "hyperdual: out of memory\n";
    return kComputation;
  }
}

}  // namespace hyperdual::cli
