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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperdual/bits.hpp"
#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"
#include "hyperdual/pauli.hpp"

namespace hyperdual {

inline constexpr std::size_t kMaxDenseQubits = 12;
inline constexpr std::size_t kMaxLanczosQubits = 24;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c0de'2024ULL;

/// Eigenvalues ascending. `eigenvectors[i]` pairs with `eigenvalues[i]` for
/// however many vectors the solver kept (at least the ground state).
struct SpectrumResult {
  std::vector<double> eigenvalues;
  std::vector<RealStateVector> eigenvectors;
  bool converged = true;
  /// Largest ||H v - lambda v|| over the kept eigenpairs.
  double residual = 0.0;
  /// Start-vector seed (Lanczos) for reproducibility; 0 for dense solves.
  std::uint64_t seed = 0;
  std::size_t matvecs = 0;

  std::optional<RealStateVector> ground_vector() const {
    if (eigenvectors.empty()) return std::nullopt;
    return eigenvectors.front();
  }
};

/// PauliSum prepared for repeated real matvecs: every Z-only term and the
/// constant folded into one diagonal, the rest grouped by X mask.
class CompiledOperator {
 public:
  explicit CompiledOperator(const PauliSum& h) : num_qubits_(h.num_qubits()) {
    if (num_qubits_ > kMaxStateQubits) throw TooLarge("operator too large for a state vector");
    const std::size_t dim = dimension();
    diag_.assign(dim, h.constant());
    std::map<std::uint64_t, std::size_t> group_of;
    for (const auto& t : h.terms()) {
      if (t.x_mask == 0) {
        for (std::size_t i = 0; i < dim; ++i) diag_[i] += t.coeff * parity_sign(i & t.z_mask);
        continue;
      }
      auto [it, inserted] = group_of.try_emplace(t.x_mask, groups_.size());
      if (inserted) groups_.push_back({t.x_mask, {}});
      groups_[it->second].zterms.emplace_back(t.z_mask, t.coeff);
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return std::size_t{1} << num_qubits_; }

  void apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t dim = dimension();
    for (std::size_t i = 0; i < dim; ++i) out[i] = diag_[i] * in[i];
    for (const auto& g : groups_) {
      if (g.zterms.size() == 1 && g.zterms[0].first == 0) {
        const double c = g.zterms[0].second;
        for (std::size_t i = 0; i < dim; ++i) out[i ^ g.x_mask] += c * in[i];
        continue;
      }
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0;
        for (const auto& [z, c] : g.zterms) acc += c * parity_sign(i & z);
        out[i ^ g.x_mask] += acc * in[i];
      }
    }
  }

 private:
  struct Group {
    std::uint64_t x_mask;
    std::vector<std::pair<std::uint64_t, double>> zterms;
  };

  std::size_t num_qubits_;
  std::vector<double> diag_;
  std::vector<Group> groups_;
};

/// Real symmetric matrix of hsum in the computational basis.
inline Eigen::MatrixXd dense_matrix(const PauliSum& hsum) {
  if (hsum.num_qubits() > kMaxDenseQubits) {
    throw TooLarge("dense path limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << hsum.num_qubits();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) *
                      hsum.constant();
  for (const auto& t : hsum.terms()) {
    for (std::size_t i = 0; i < dim; ++i) {
      m(static_cast<Eigen::Index>(i ^ t.x_mask), static_cast<Eigen::Index>(i)) += t.coeff * parity_sign(i & t.z_mask);
    }
  }
  return m;
}

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}
inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }
inline double normalize_in_place(std::span<double> a) {
  const double n = norm(a);
  if (n > 0) {
    for (auto& x : a) x /= n;
  }
  return n;
}

inline double residual_norm(const CompiledOperator& op, std::span<const double> v, double lambda) {
  std::vector<double> w(v.size());
  op.apply(v, w);
  axpy(-lambda, v, w);
  return norm(w);
}

// Dense solve of an explicit symmetric matrix, keeping `nvec` lowest vectors.
inline SpectrumResult solve_dense(const Eigen::MatrixXd& m, std::size_t nvec,
                                  const std::function<RealStateVector(const Eigen::VectorXd&)>& embed) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NotConverged("dense eigensolver failed");
  SpectrumResult out;
  const auto& ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  nvec = std::min<std::size_t>(nvec, static_cast<std::size_t>(ev.size()));
  for (std::size_t k = 0; k < nvec; ++k) {
    const Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(k));
    out.residual = std::max(out.residual, (m * v - ev[static_cast<Eigen::Index>(k)] * v).norm());
    out.eigenvectors.push_back(embed(v));
  }
  return out;
}

}  // namespace detail

/// Full spectrum by dense diagonalization; the oracle-grade path for K <= 12.
inline SpectrumResult eig_dense(const PauliSum& hsum, std::size_t keep_vectors = 1) {
  const auto k = hsum.num_qubits();
  return detail::solve_dense(dense_matrix(hsum), keep_vectors, [k](const Eigen::VectorXd& v) {
    return RealStateVector(k, std::vector<double>(v.data(), v.data() + v.size()));
  });
}

struct LanczosOptions {
  double tol = 1e-10;
  /// Matvec budget per requested eigenpair.
  std::size_t max_iter = 2000;
  std::uint64_t seed = kDefaultSeed;
  /// Krylov basis size before an explicit restart from the current Ritz vector.
  std::size_t krylov_dim = 45;
};

namespace detail {

struct Eigenpair {
  double value = 0;
  std::vector<double> vector;
  double residual = 0;
  bool converged = false;
};

inline void orthogonalize(std::span<double> w, const std::vector<std::vector<double>>& basis) {
  for (const auto& u : basis) axpy(-dot(u, w), u, w);
}

// Lowest eigenpair of op restricted to the orthogonal complement of `locked`.
// Lanczos with full reorthogonalization (Gram-Schmidt against the locked
// vectors and the whole Krylov basis, repeated once when it cancels most of
// the new vector), restarted from the Ritz vector.
inline Eigenpair lowest_in_complement(const CompiledOperator& op, const std::vector<std::vector<double>>& locked,
                                      std::vector<double> start, const LanczosOptions& opts, std::size_t& matvecs) {
  const std::size_t dim = op.dimension();
  const std::size_t free_dim = dim - locked.size();
  const std::size_t m_max = std::max<std::size_t>(1, std::min(opts.krylov_dim, free_dim));
  const std::size_t budget_end = matvecs + opts.max_iter;

  orthogonalize(start, locked);
  orthogonalize(start, locked);
  if (normalize_in_place(start) == 0) throw NotConverged("Lanczos start vector lies in the locked subspace");

  Eigenpair best;
  std::vector<std::vector<double>> basis;
  std::vector<double> w(dim);
  while (true) {
    basis.assign(1, start);
    std::vector<double> alpha, beta;
    Eigen::VectorXd ritz;
    double theta = 0;
    for (std::size_t j = 0;; ++j) {
      op.apply(basis[j], w);
      ++matvecs;
      alpha.push_back(dot(basis[j], w));
      axpy(-alpha.back(), basis[j], w);
      if (j > 0) axpy(-beta.back(), basis[j - 1], w);
      // Second pass only when the first cancelled most of w ("twice is enough").
      double b = norm(w);
      for (int pass = 0; pass < 2; ++pass) {
        orthogonalize(w, locked);
        orthogonalize(w, basis);
        const double after = norm(w);
        const bool enough = after > 0.7 * b;
        b = after;
        if (enough) break;
      }

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
      Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
      tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()[0];
      ritz = tri.eigenvectors().col(0);
      const double estimate = b * std::abs(ritz[static_cast<Eigen::Index>(j)]);

      const double scale = std::max(1.0, std::abs(theta));
      const bool invariant = b <= 1e-13 * scale;
      if (estimate <= 0.1 * opts.tol || invariant || j + 1 >= m_max || matvecs >= budget_end) break;
      beta.push_back(b);
      basis.emplace_back(w.begin(), w.end());
      for (auto& x : basis.back()) x /= b;
    }

    std::vector<double> y(dim, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) axpy(ritz[static_cast<Eigen::Index>(i)], basis[i], y);
    orthogonalize(y, locked);
    normalize_in_place(y);
    op.apply(y, w);
    ++matvecs;
    const double rq = dot(y, w);
    axpy(-rq, y, w);
    const double res = norm(w);

    if (best.vector.empty() || res < best.residual) best = {rq, y, res, false};
    if (res <= opts.tol) {
      best.converged = true;
      return best;
    }
    if (matvecs >= budget_end) return best;
    start = std::move(y);
  }
}

}  // namespace detail

/// Lowest k eigenpairs by Lanczos. Each eigenpair is computed in the
/// orthogonal complement of those already found (locking), so degenerate
/// levels are returned with their multiplicity. The start vectors come from a
/// fixed seed; results are reproducible. Not converging within the budget
/// yields the best estimate with converged = false.
inline SpectrumResult ground_lanczos(const PauliSum& hsum, std::size_t k, const LanczosOptions& opts = {}) {
  if (hsum.num_qubits() > kMaxLanczosQubits) {
    throw TooLarge("Lanczos path limited to " + std::to_string(kMaxLanczosQubits) + " qubits");
  }
  if (k == 0) throw InvalidInput("k must be at least 1");
  const CompiledOperator op(hsum);
  if (k > op.dimension()) throw InvalidInput("k exceeds the Hilbert-space dimension");

  SpectrumResult out;
  out.seed = opts.seed;
  std::vector<std::vector<double>> locked;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t n = 0; n < k; ++n) {
    auto start = RealStateVector::random(hsum.num_qubits(), opts.seed + n);
    auto pair = detail::lowest_in_complement(op, locked, {start.amplitudes().begin(), start.amplitudes().end()},
                                             opts, out.matvecs);
    out.converged = out.converged && pair.converged;
    out.residual = std::max(out.residual, pair.residual);
    order.emplace_back(pair.value, n);
    locked.push_back(std::move(pair.vector));
  }
  std::sort(order.begin(), order.end());
  for (const auto& [value, n] : order) {
    out.eigenvalues.push_back(value);
    out.eigenvectors.emplace_back(hsum.num_qubits(), locked[n]);
  }
  return out;
}

inline SpectrumResult ground_lanczos(const PauliSum& hsum, std::size_t k, double tol, std::size_t max_iter) {
  LanczosOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return ground_lanczos(hsum, k, opts);
}

/// Computational basis states of the simultaneous +1 eigenspace of the
/// Z-type stabilizers given by hstar's edges, ascending. These are the x with
/// x . e* = 0 for every edge e*, i.e. the GF(2) nullspace of hstar's incidence.
inline std::vector<std::uint64_t> sector_basis(const Hypergraph& hstar) {
  if (hstar.num_vertices() > kMaxLanczosQubits) throw TooLarge("sector enumeration limited to 24 qubits");
  const BitMatrix gens = gf2_nullspace(hstar.incidence());
  std::vector<std::uint64_t> masks;
  for (std::size_t r = 0; r < gens.rows(); ++r) masks.push_back(gens.row(r).to_mask());
  std::vector<std::uint64_t> states;
  states.reserve(std::size_t{1} << masks.size());
  std::uint64_t x = 0;
  states.push_back(x);
  // Gray-code walk over all combinations of the generators.
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << masks.size()); ++step) {
    x ^= masks[static_cast<std::size_t>(std::countr_zero(step))];
    states.push_back(x);
  }
  std::sort(states.begin(), states.end());
  return states;
}

/// Spectrum of hsum restricted to the sector where every B (Z-type, one per
/// edge of hstar) is +1. The sector is spanned by computational basis states,
/// so the reduced matrix is assembled directly; its dimension is
/// 2^(K - rank(hstar)).
inline SpectrumResult sector_spectrum(const PauliSum& hsum, const Hypergraph& hstar, std::size_t keep_vectors = 1) {
  if (hstar.num_vertices() != hsum.num_qubits()) throw DimensionMismatch("stabilizers and operator act on different registers");
  for (std::size_t e = 0; e < hstar.num_edges(); ++e) {
    const PauliTerm b{0, edge_mask(hstar, e), 1.0};
    for (const auto& t : hsum.terms()) {
      if (!commutes(t, b)) throw InvalidInput("operator does not commute with stabilizer " + std::to_string(e + 1));
    }
  }
  const std::size_t dim_exp = hstar.num_vertices() - gf2_rank(hstar.incidence());
  if (dim_exp > kMaxDenseQubits) throw TooLarge("sector of dimension 2^" + std::to_string(dim_exp) + " exceeds the dense path");
  const auto states = sector_basis(hstar);
  if (states.empty()) throw SectorEmpty("stabilizer sector is empty");

  const auto n = static_cast<Eigen::Index>(states.size());
  auto position = [&](std::uint64_t s) {
    auto it = std::lower_bound(states.begin(), states.end(), s);
    if (it == states.end() || *it != s) throw SectorEmpty("operator leaks out of the stabilizer sector");
    return static_cast<Eigen::Index>(it - states.begin());
  };
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) * hsum.constant();
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto y = states[static_cast<std::size_t>(col)];
    for (const auto& t : hsum.terms()) m(position(y ^ t.x_mask), col) += t.coeff * parity_sign(y & t.z_mask);
  }
  const auto k = hsum.num_qubits();
  return detail::solve_dense(m, keep_vectors, [&](const Eigen::VectorXd& v) {
    RealStateVector full(k);
    for (Eigen::Index i = 0; i < n; ++i) full[states[static_cast<std::size_t>(i)]] = v[i];
    return full;
  });
}

/// A Hamiltonian family indexed by one real ratio (h/J by convention).
struct ParametrizedModel {
  std::string id;
  std::function<PauliSum(double)> build;
};

inline constexpr double kDegeneracyGap = 1e-10;

/// Lowest eigenspace of hsum: grows k until the first level above the ground
/// level is separated by more than kDegeneracyGap (capped at 16 vectors).
inline SpectrumResult lowest_eigenspace(const PauliSum& hsum, const LanczosOptions& opts = {}) {
  const std::size_t dim = std::size_t{1} << hsum.num_qubits();
  std::size_t k = std::min<std::size_t>(2, dim);
  while (true) {
    auto res = ground_lanczos(hsum, k, opts);
    const bool separated = res.eigenvalues.back() - res.eigenvalues.front() > kDegeneracyGap;
    if (separated || k >= dim || k >= 16) {
      std::size_t keep = 1;
      while (keep < res.eigenvalues.size() && res.eigenvalues[keep] - res.eigenvalues[0] <= kDegeneracyGap) ++keep;
      res.eigenvectors.resize(keep);
      res.eigenvalues.resize(std::max<std::size_t>(keep, std::min<std::size_t>(2, res.eigenvalues.size())));
      return res;
    }
    k = std::min(dim, 2 * k);
  }
}

/// Fidelity susceptibility from a ground state and the lowest eigenspace at
/// the displaced parameter: 2 (1 - ||P psi0||) / delta^2.
inline double fidelity_susceptibility(const RealStateVector& ground, const SpectrumResult& shifted, double delta) {
  double f2 = 0;
  for (const auto& phi : shifted.eigenvectors) {
    const double o = inner(phi, ground);
    f2 += o * o;
  }
  const double f = std::min(1.0, std::sqrt(f2));
  return 2.0 * (1.0 - f) / (delta * delta);
}

/// chi_F(ratio) = 2 (1 - |<psi0(ratio)|psi0(ratio + delta)>|) / delta^2 with
/// Lanczos ground states. A degenerate lowest level at ratio + delta is
/// handled by projecting onto the whole level. delta may be negative.
inline double fidelity_susceptibility(const ParametrizedModel& model, double ratio, double delta,
                                      const LanczosOptions& opts = {}) {
  if (delta == 0) throw InvalidInput("delta must be non-zero");
  const auto at = ground_lanczos(model.build(ratio), 1, opts);
  const auto shifted = lowest_eigenspace(model.build(ratio + delta), opts);
  if (!at.converged || !shifted.converged) {
    throw NotConverged("Lanczos did not converge while evaluating chi_F at ratio " + std::to_string(ratio));
  }
  return fidelity_susceptibility(at.eigenvectors.front(), shifted, delta);
}

}  // namespace hyperdual
