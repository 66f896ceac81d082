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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyperdual/errors.hpp"

namespace hyperdual {

/// Fixed-width vector over GF(2), packed into 64-bit words. Bits past
/// size() in the last word are always zero.
class BitVector {
 public:
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t nbits)
      : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  static BitVector from_indices(std::size_t nbits, std::span<const std::size_t> ones) {
    BitVector v(nbits);
    for (auto i : ones) v.flip(i);
    return v;
  }

  std::size_t size() const { return nbits_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true) {
    auto& w = words_[i / kWordBits];
    const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
  }
  bool none() const { return !any(); }

  /// Inner product mod 2.
  bool dot(const BitVector& other) const {
    check_width(other);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
  }

  bool intersects(const BitVector& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & other.words_[k]) return true;
    }
    return false;
  }

  std::optional<std::size_t> first_set() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return std::nullopt;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      for (auto w = words_[k]; w != 0; w &= w - 1) {
        out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
    return out;
  }

  /// Low 64 bits as an integer mask. Only meaningful when size() <= 64.
  std::uint64_t to_mask() const {
    if (nbits_ > kWordBits) throw TooLarge("bit vector wider than 64 bits cannot be a mask");
    return words_.empty() ? 0 : words_[0];
  }
  static BitVector from_mask(std::size_t nbits, std::uint64_t mask) {
    BitVector v(nbits);
    if (nbits < kWordBits) mask &= (std::uint64_t{1} << nbits) - 1;
    if (!v.words_.empty()) v.words_[0] = mask;
    return v;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend auto operator<=>(const BitVector& a, const BitVector& b) {
    if (auto c = a.nbits_ <=> b.nbits_; c != 0) return c;
    // Order by bit 0 first, so sorted rows read lexicographically left to right.
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      if (a.words_[k] != b.words_[k]) {
        auto diff = a.words_[k] ^ b.words_[k];
        auto low = diff & (~diff + 1);
        return (a.words_[k] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

 private:
  void check_width(const BitVector& other) const {
    if (other.nbits_ != nbits_) throw DimensionMismatch("bit vector widths differ");
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense binary matrix stored row-major, one packed BitVector per row.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t cols) : cols_(cols) {}
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  const BitVector& row(std::size_t r) const { return rows_[r]; }
  std::span<const BitVector> row_span() const { return rows_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

  void append_row(BitVector row) {
    if (row.size() != cols_) throw DimensionMismatch("row width does not match matrix column count");
    rows_.push_back(std::move(row));
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (auto c : rows_[r].ones()) t.set(c, r);
    }
    return t;
  }

  /// Matrix-vector product over GF(2).
  BitVector multiply(const BitVector& x) const {
    BitVector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(x));
    return out;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Reduced row echelon form over GF(2). `pivots[i]` is the pivot column of
/// row i; rows past pivots.size() are zero and are dropped.
struct RowEchelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon gf2_rref(const BitMatrix& m) {
  std::vector<BitVector> rows(m.row_span().begin(), m.row_span().end());
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[next], rows[p]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  RowEchelon out{BitMatrix(m.cols()), std::move(pivots)};
  for (std::size_t r = 0; r < out.pivots.size(); ++r) out.reduced.append_row(std::move(rows[r]));
  return out;
}

inline std::size_t gf2_rank(const BitMatrix& m) { return gf2_rref(m).pivots.size(); }

/// Basis of {x : m x = 0 (mod 2)}. One row per free column of the reduced
/// row echelon form, in ascending free-column order; the row for free column
/// f has x_f = 1, zeros on the other free columns, and the pivot entries that
/// the elimination forces.
inline BitMatrix gf2_nullspace(const BitMatrix& m) {
  const auto ech = gf2_rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;

  BitMatrix basis(m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector x(m.cols());
    x.set(f);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      if (ech.reduced.get(r, f)) x.set(ech.pivots[r]);
    }
    basis.append_row(std::move(x));
  }
  return basis;
}

}  // namespace hyperdual
