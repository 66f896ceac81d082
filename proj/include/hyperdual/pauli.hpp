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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <span>
#include <type_traits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyperdual/errors.hpp"
#include "hyperdual/hypergraph.hpp"

namespace hyperdual {

/// Largest register a PauliSum can describe (masks are single 64-bit words).
inline constexpr std::size_t kMaxMaskQubits = 64;
/// Largest register a dense state vector is allocated for.
inline constexpr std::size_t kMaxStateQubits = 30;

/// coeff * prod_{q in x_mask} X_q * prod_{q in z_mask} Z_q, with disjoint masks
/// (X and Z only; no Y in CSS models). Bit q of a mask is qubit q.
struct PauliTerm {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  double coeff = 0.0;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Whether two Pauli strings commute: symplectic product is even.
inline bool commutes(const PauliTerm& a, const PauliTerm& b) {
  return ((std::popcount(a.x_mask & b.z_mask) + std::popcount(a.z_mask & b.x_mask)) & 1) == 0;
}

/// Real-weighted sum of X/Z Pauli strings plus an identity constant.
/// Terms with equal masks are merged on insertion by adding coefficients;
/// first-insertion order is kept.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxMaskQubits) {
      throw TooLarge("Pauli sums are limited to " + std::to_string(kMaxMaskQubits) + " qubits");
    }
  }

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  double constant() const { return constant_; }

  PauliSum& add(std::uint64_t x_mask, std::uint64_t z_mask, double coeff) {
    if ((x_mask & z_mask) != 0) throw InvalidInput("X and Z on the same qubit (Y) is not allowed in CSS terms");
    if (((x_mask | z_mask) & ~width_mask()) != 0) {
      throw DimensionMismatch("Pauli term acts outside the " + std::to_string(num_qubits_) + "-qubit register");
    }
    if (x_mask == 0 && z_mask == 0) {
      constant_ += coeff;
      return *this;
    }
    auto [it, inserted] = index_.try_emplace({x_mask, z_mask}, terms_.size());
    if (inserted) {
      terms_.push_back({x_mask, z_mask, coeff});
    } else {
      terms_[it->second].coeff += coeff;
    }
    return *this;
  }
  PauliSum& add(const PauliTerm& t) { return add(t.x_mask, t.z_mask, t.coeff); }
  PauliSum& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  PauliSum& operator+=(const PauliSum& other) {
    if (other.num_qubits_ != num_qubits_) throw DimensionMismatch("Pauli sums act on different registers");
    for (const auto& t : other.terms_) add(t);
    constant_ += other.constant_;
    return *this;
  }

  /// Same operator: equal constants and equal coefficient per mask pair.
  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    return a.num_qubits_ == b.num_qubits_ && a.constant_ == b.constant_ && a.sorted() == b.sorted();
  }

  std::vector<PauliTerm> sorted() const {
    auto out = terms_;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::pair(a.x_mask, a.z_mask) < std::pair(b.x_mask, b.z_mask);
    });
    return out;
  }

  /// One line per term, `<coeff> <X-support> | <Z-support>` with 1-indexed
  /// qubits, then `const <value>`.
  std::string dump() const {
    std::ostringstream out;
    auto real = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    auto support = [&](std::uint64_t mask) {
      std::string s;
      for (std::size_t q = 0; q < num_qubits_; ++q) {
        if ((mask >> q) & 1) s += ' ' + std::to_string(q + 1);
      }
      return s;
    };
    for (const auto& t : terms_) out << real(t.coeff) << support(t.x_mask) << " |" << support(t.z_mask) << '\n';
    out << "const " << real(constant_) << '\n';
    return out.str();
  }

 private:
  std::uint64_t width_mask() const {
    return num_qubits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_qubits_) - 1;
  }

  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index_;
  double constant_ = 0.0;
};

/// Dense amplitude vector over the 2^K computational basis; bit q of a basis
/// index is the Z-eigenvalue label of qubit q (0 for +1). Instantiated with
/// std::complex<double> (StateVector) and with double for the real-symmetric
/// eigensolver paths (RealStateVector).
template <class Scalar>
class BasicStateVector {
 public:
  BasicStateVector() = default;
  explicit BasicStateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxStateQubits) throw TooLarge("state vector over " + std::to_string(num_qubits) + " qubits");
    amps_.assign(std::size_t{1} << num_qubits, Scalar{});
  }
  BasicStateVector(std::size_t num_qubits, std::vector<Scalar> amps) : num_qubits_(num_qubits), amps_(std::move(amps)) {
    if (num_qubits > kMaxStateQubits || amps_.size() != (std::size_t{1} << num_qubits)) {
      throw DimensionMismatch("amplitude count must be 2^K");
    }
  }

  static BasicStateVector basis(std::size_t num_qubits, std::size_t index) {
    BasicStateVector s(num_qubits);
    s.amps_.at(index) = Scalar{1};
    return s;
  }

  /// Normalized Gaussian-random state from a fixed seed.
  static BasicStateVector random(std::size_t num_qubits, std::uint64_t seed) {
    BasicStateVector s(num_qubits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (auto& a : s.amps_) {
      if constexpr (std::is_same_v<Scalar, double>) {
        a = gauss(rng);
      } else {
        const double re = gauss(rng);
        a = Scalar(re, gauss(rng));
      }
    }
    s.normalize();
    return s;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Scalar> amplitudes() const { return amps_; }
  std::span<Scalar> amplitudes() { return amps_; }
  Scalar& operator[](std::size_t i) { return amps_[i]; }
  const Scalar& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }
  /// Scales to unit norm; returns the norm before scaling (0 leaves the vector untouched).
  double normalize() {
    const double n = norm();
    if (n > 0) {
      for (auto& a : amps_) a /= n;
    }
    return n;
  }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Scalar> amps_;
};

using StateVector = BasicStateVector<std::complex<double>>;
using RealStateVector = BasicStateVector<double>;

template <class Scalar>
Scalar inner(const BasicStateVector<Scalar>& a, const BasicStateVector<Scalar>& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("inner product of states of different size");
  Scalar acc{};
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if constexpr (std::is_same_v<Scalar, double>) {
      acc += a[i] * b[i];
    } else {
      acc += std::conj(a[i]) * b[i];
    }
  }
  return acc;
}

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

/// hsum |s>. Each term maps |i> to coeff * (-1)^popcount(i & z_mask) |i ^ x_mask>.
template <class Scalar>
BasicStateVector<Scalar> apply(const PauliSum& hsum, const BasicStateVector<Scalar>& s) {
  if (hsum.num_qubits() != s.num_qubits()) throw DimensionMismatch("operator and state act on different registers");
  BasicStateVector<Scalar> out(s.num_qubits());
  const std::size_t dim = s.dimension();
  for (std::size_t i = 0; i < dim; ++i) out[i] = hsum.constant() * s[i];
  for (const auto& t : hsum.terms()) {
    for (std::size_t i = 0; i < dim; ++i) {
      out[i ^ t.x_mask] += (t.coeff * parity_sign(i & t.z_mask)) * s[i];
    }
  }
  return out;
}

/// Hypergraph edge as a qubit mask.
inline std::uint64_t edge_mask(const Hypergraph& h, std::size_t e) {
  if (h.num_vertices() > kMaxMaskQubits) throw TooLarge("hypergraph too wide for Pauli masks");
  return h.edge(e).to_mask();
}

/// -j * sum over independent edges of A_e (X-type) - j * sum over edges of
/// hstar of B (Z-type). Dependent edges of h are dropped; the ground energy
/// is then -j * (rank + |hstar|), attained by the CSS state.
inline PauliSum css_hamiltonian(const Hypergraph& h, const Hypergraph& hstar, double j) {
  if (hstar.num_vertices() != h.num_vertices()) throw DimensionMismatch("hstar and h have different vertex counts");
  if (!(j > 0)) throw InvalidInput("coupling j must be positive");
  for (std::size_t a = 0; a < h.num_edges(); ++a) {
    for (std::size_t b = 0; b < hstar.num_edges(); ++b) {
      if (h.edge(a).dot(hstar.edge(b))) {
        throw InvalidInput("edge " + std::to_string(b + 1) + " of hstar is not orthogonal to edge " +
                           std::to_string(a + 1) + " of h");
      }
    }
  }
  PauliSum out(h.num_vertices());
  for (auto e : independent_set(h).edge_indices) out.add(edge_mask(h, e), 0, -j);
  for (std::size_t e = 0; e < hstar.num_edges(); ++e) out.add(0, edge_mask(hstar, e), -j);
  return out;
}

/// css_hamiltonian - field * sum_v Z_v.
inline PauliSum perturbed_css_hamiltonian(const Hypergraph& h, const Hypergraph& hstar, double j, double field) {
  if (field < 0) throw InvalidInput("field must be non-negative");
  PauliSum out = css_hamiltonian(h, hstar, j);
  for (std::size_t v = 0; v < h.num_vertices(); ++v) out.add(0, std::uint64_t{1} << v, -field);
  return out;
}

/// -a * sum_e prod_{v in e} X_v - b * sum_v Z_v + shift. Coinciding edges merge
/// into one term with a summed coefficient.
inline PauliSum ising_like_hamiltonian(const Hypergraph& h, double a, double b, double shift = 0.0) {
  PauliSum out(h.num_vertices());
  for (std::size_t e = 0; e < h.num_edges(); ++e) out.add(edge_mask(h, e), 0, -a);
  for (std::size_t v = 0; v < h.num_vertices(); ++v) out.add(0, std::uint64_t{1} << v, -b);
  out.add_constant(shift);
  return out;
}

/// Constant picked up by the dual model: every B stabilizer is +1 in the
/// sector (-j each, K - rank of them), and every vertex of h in no edge has
/// Z_v inside the stabilizer group, so its field term is the constant -field.
inline double dual_shift(const Hypergraph& h, double j, double field) {
  const auto r = rank(h);
  return -j * static_cast<double>(h.num_vertices() - r) -
         field * static_cast<double>(h.isolated_vertices().size());
}

/// The Ising-like model on dual(h) with the couplings exchanged: field
/// multiplies the X interactions and j the transverse Z field. Requires
/// independent edges (reduce with independent_set first).
inline PauliSum dual_model(const Hypergraph& h, double j, double field) {
  if (!has_independent_edges(h)) {
    throw DependentEdges("dual_model needs independent edges; " + std::to_string(h.num_edges() - rank(h)) +
                         " edge(s) are dependent");
  }
  return ising_like_hamiltonian(dual(h), field, j, dual_shift(h, j, field));
}

/// prod over edges of hstar of (1 + B)/2 applied to s; unnormalized.
template <class Scalar>
BasicStateVector<Scalar> sector_projector_apply(const Hypergraph& hstar, const BasicStateVector<Scalar>& s) {
  if (hstar.num_vertices() != s.num_qubits()) throw DimensionMismatch("stabilizers and state act on different registers");
  std::vector<std::uint64_t> masks;
  for (std::size_t e = 0; e < hstar.num_edges(); ++e) masks.push_back(edge_mask(hstar, e));
  BasicStateVector<Scalar> out = s;
  for (std::size_t i = 0; i < out.dimension(); ++i) {
    for (auto m : masks) {
      if (std::popcount(i & m) & 1) {
        out[i] = Scalar{};
        break;
      }
    }
  }
  return out;
}

}  // namespace hyperdual
