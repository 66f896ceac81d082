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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"
#include "hyperdual/lattice.hpp"
#include "hyperdual/pauli.hpp"
#include "hyperdual/spectra.hpp"

namespace hyperdual {

/// Result of comparing the stabilizer-sector spectrum of the perturbed CSS
/// model on h against the full spectrum of its dual Ising-like model.
struct DualityReport {
  std::vector<double> original_sector_spectrum;
  std::vector<double> dual_spectrum;
  double shift_used = 0.0;
  double max_abs_deviation = 0.0;
  double tolerance = 0.0;
  double j = 0.0;
  double field = 0.0;
  bool passed = false;
  /// Dependent edges of the input (0-indexed) removed before building either side.
  std::vector<std::size_t> dropped_edges;
};

/// Builds both sides from the independent-reduced h and compares the sorted
/// spectra pairwise. Dependent edges are dropped and reported, never fatal.
inline DualityReport verify_duality(const Hypergraph& h, double j, double field, double tol = 1e-9) {
  const auto iset = independent_set(h);
  if (iset.rank > kMaxDenseQubits || h.num_vertices() > kMaxLanczosQubits) {
    throw TooLarge("duality check needs rank <= 12 and K <= 24 (rank " + std::to_string(iset.rank) + ", K " +
                   std::to_string(h.num_vertices()) + ")");
  }
  DualityReport report;
  report.j = j;
  report.field = field;
  report.tolerance = tol;
  std::vector<bool> kept(h.num_edges(), false);
  for (auto e : iset.edge_indices) kept[e] = true;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    if (!kept[e]) report.dropped_edges.push_back(e);
  }

  const Hypergraph reduced = restrict_edges(h, iset.edge_indices);
  const Hypergraph hstar = orthogonal(reduced);
  report.original_sector_spectrum =
      sector_spectrum(perturbed_css_hamiltonian(reduced, hstar, j, field), hstar).eigenvalues;
  report.shift_used = dual_shift(reduced, j, field);
  report.dual_spectrum = eig_dense(dual_model(reduced, j, field)).eigenvalues;

  auto& a = report.original_sector_spectrum;
  auto& b = report.dual_spectrum;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) {
    report.max_abs_deviation = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(a[i] - b[i]));
    }
  }
  report.passed = report.max_abs_deviation <= tol;
  return report;
}

enum class CriticalMethod { chi_f_peak, energy_curvature };

struct ScanSample {
  double ratio = 0.0;
  double ground_energy = 0.0;
  double gap = 0.0;
  double chi_f = 0.0;
  bool converged = true;

  friend bool operator==(const ScanSample&, const ScanSample&) = default;
};

struct ScanResult {
  std::string model_id;
  std::vector<ScanSample> samples;
  /// Absent when chi_F is flat over the grid (no transition seen).
  std::optional<double> critical_estimate;
  CriticalMethod method = CriticalMethod::chi_f_peak;
  /// Peak of -d^2 E0 / d ratio^2, kept as a cross-check.
  std::optional<double> curvature_estimate;
};

struct ScanOptions {
  double delta = 1e-3;
  LanczosOptions lanczos;
  /// 0 picks hardware concurrency, capped by HYPERDUAL_THREADS when set.
  std::size_t threads = 0;
};

/// Worker count: hardware concurrency, capped by HYPERDUAL_THREADS.
inline std::size_t worker_count(std::size_t requested = 0) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HYPERDUAL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

namespace detail {

// Vertex of the parabola through three points, clamped to [x0, x2].
inline double parabolic_peak(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d0 = (y1 - y0) / (x1 - x0);
  const double d1 = (y2 - y1) / (x2 - x1);
  const double curvature = (d1 - d0) / (x2 - x0);
  if (!(curvature < 0)) return x1;
  const double vertex = 0.5 * (x0 + x1) - d0 / (2 * curvature);
  return std::clamp(vertex, x0, x2);
}

inline std::optional<double> refined_argmax(std::span<const double> x, std::span<const double> y) {
  if (x.empty()) return std::nullopt;
  const auto it = std::max_element(y.begin(), y.end());
  const auto lo = std::min_element(y.begin(), y.end());
  if (!(*it - *lo > 1e-12)) return std::nullopt;
  const auto i = static_cast<std::size_t>(it - y.begin());
  if (i == 0 || i + 1 == x.size()) return x[i];
  return parabolic_peak(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
}

template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

/// Ground energy, gap and chi_F at every grid ratio. The critical estimate is
/// the chi_F maximum refined by a parabola through it and its two neighbours.
/// Grid points are evaluated independently (possibly concurrently) and merged
/// in ratio order; a point whose Lanczos runs did not converge is kept with
/// converged = false and excluded from the estimates.
inline ScanResult scan_transition(const ParametrizedModel& model, std::span<const double> ratios,
                                  const ScanOptions& opts = {}) {
  if (ratios.size() < 5) throw InvalidInput("scan grid needs at least 5 points");
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (!(ratios[i] > ratios[i - 1])) throw InvalidInput("scan grid must be strictly increasing");
  }
  if (!(opts.delta > 0)) throw InvalidInput("delta must be positive");

  ScanResult out;
  out.model_id = model.id;
  out.samples.resize(ratios.size());
  detail::parallel_for(ratios.size(), worker_count(opts.threads), [&](std::size_t i) {
    const double r = ratios[i];
    const auto here = lowest_eigenspace(model.build(r), opts.lanczos);
    const auto there = lowest_eigenspace(model.build(r + opts.delta), opts.lanczos);
    ScanSample s;
    s.ratio = r;
    s.ground_energy = here.eigenvalues[0];
    s.gap = here.eigenvalues.size() > 1 ? here.eigenvalues[1] - here.eigenvalues[0] : 0.0;
    s.chi_f = fidelity_susceptibility(here.eigenvectors.front(), there, opts.delta);
    s.converged = here.converged && there.converged;
    out.samples[i] = s;
  });

  std::vector<double> x, chi, e0;
  for (const auto& s : out.samples) {
    if (!s.converged) continue;
    x.push_back(s.ratio);
    chi.push_back(s.chi_f);
    e0.push_back(s.ground_energy);
  }
  out.critical_estimate = detail::refined_argmax(x, chi);

  if (x.size() >= 3) {
    std::vector<double> xc, neg_curv;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      const double d0 = (e0[i] - e0[i - 1]) / (x[i] - x[i - 1]);
      const double d1 = (e0[i + 1] - e0[i]) / (x[i + 1] - x[i]);
      xc.push_back(x[i]);
      neg_curv.push_back(-2.0 * (d1 - d0) / (x[i + 1] - x[i - 1]));
    }
    out.curvature_estimate = detail::refined_argmax(xc, neg_curv);
  }
  return out;
}

/// Transverse-field Ising-like model on h: -sum_e X_e - ratio * sum_v Z_v.
inline ParametrizedModel ising_model(const Hypergraph& h, std::string id = "ising") {
  return {std::move(id), [h](double ratio) { return ising_like_hamiltonian(h, 1.0, ratio); }};
}

/// The dual of the perturbed CSS model on h at J = 1, field = ratio. Its
/// spectrum is the stabilizer-sector spectrum of the CSS model, so ratio is
/// the CSS-side h/J. Dependent edges of h are dropped first.
inline ParametrizedModel dual_css_model(const Hypergraph& h, std::string id = "css-dual") {
  Hypergraph reduced = restrict_edges(h, independent_set(h).edge_indices);
  return {std::move(id), [reduced](double ratio) { return dual_model(reduced, 1.0, ratio); }};
}

/// Robustness scan of the toric code on g. Every star is kept: the perturbed
/// TC maps onto the transverse-field Ising model on all vertices of g with
/// the couplings exchanged (bond strength h, transverse field J), and its
/// ground state lies in the even sector that the star dependency selects.
/// Dropping a dependent star instead would cut the cluster open. The grid and
/// the reported ratios are the TC's own h/J.
inline ParametrizedModel toric_code_dual_model(const Graph& g, std::string id = "tc-robustness") {
  const Hypergraph tc = toric_code_hypergraph(g);
  const Hypergraph d = dual(tc);
  if (d.num_vertices() > kMaxLanczosQubits) {
    throw TooLarge("dual Ising model would need " + std::to_string(d.num_vertices()) + " qubits");
  }
  return {std::move(id), [tc, d](double ratio) { return ising_like_hamiltonian(d, ratio, 1.0, dual_shift(tc, 1.0, ratio)); }};
}

inline ScanResult estimate_tc_robustness(const Graph& g, std::span<const double> ratios, const ScanOptions& opts = {}) {
  return scan_transition(toric_code_dual_model(g), ratios, opts);
}

inline std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0) || !(stop >= start)) throw InvalidInput("grid needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with header `ratio,e0,gap,chi_f`, one row per sample, 17 significant digits.
inline void write_csv(std::ostream& out, const ScanResult& r) {
  out << "ratio,e0,gap,chi_f\n";
  for (const auto& s : r.samples) {
    out << format_real(s.ratio) << ',' << format_real(s.ground_energy) << ',' << format_real(s.gap) << ','
        << format_real(s.chi_f) << '\n';
  }
}

inline std::vector<ScanSample> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "ratio,e0,gap,chi_f") throw ParseError("missing CSV header ratio,e0,gap,chi_f");
  std::vector<ScanSample> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double v[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(row, cell, ',')) throw ParseError("CSV line " + std::to_string(line_no) + ": expected 4 columns");
      char* end = nullptr;
      v[c] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw ParseError("CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
    if (std::getline(row, cell, ',')) throw ParseError("CSV line " + std::to_string(line_no) + ": too many columns");
    out.push_back({v[0], v[1], v[2], v[3], true});
  }
  return out;
}

inline void export_csv(const ScanResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, r);
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// Key-value text, one `key value...` record per line.
inline void write_report(std::ostream& out, const DualityReport& d) {
  auto list = [&](const char* key, const std::vector<double>& values) {
    out << key;
    for (auto v : values) out << ' ' << format_real(v);
    out << '\n';
  };
  out << "passed " << (d.passed ? "true" : "false") << '\n'
      << "j " << format_real(d.j) << '\n'
      << "field " << format_real(d.field) << '\n'
      << "tolerance " << format_real(d.tolerance) << '\n'
      << "shift_used " << format_real(d.shift_used) << '\n'
      << "max_abs_deviation " << format_real(d.max_abs_deviation) << '\n'
      << "dimension " << d.dual_spectrum.size() << '\n'
      << "dropped_edges";
  for (auto e : d.dropped_edges) out << ' ' << e + 1;
  out << '\n';
  list("original_sector_spectrum", d.original_sector_spectrum);
  list("dual_spectrum", d.dual_spectrum);
}

inline void export_report(const DualityReport& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_report(out, d);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace hyperdual
