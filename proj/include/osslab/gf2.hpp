// Copyright 2026 The OSSLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OSSLAB_GF2_HPP_
#define OSSLAB_GF2_HPP_

// Bit-packed linear algebra over Z_2.
//
// Public indices are 1-based: bit 1 of a vector is its most significant
// position and column 1 of a matrix is its leftmost column. A BitVec of
// length `len` stores bit i at word position (len - i), so the stored word
// reads as the binary string b_1 b_2 ... b_len. Everything here is limited to
// 64 bits per vector (and thus 64 columns per matrix row).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osslab/prg.hpp"

namespace osslab::gf2 {

inline constexpr std::size_t kMaxBits = 64;

/// Mask with the low `len` bits set.
constexpr std::uint64_t low_mask(std::size_t len) {
  return len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
}

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t len);
  /// Takes the low `len` bits of `word`; higher bits must be zero.
  BitVec(std::size_t len, std::uint64_t word);

  static BitVec zero(std::size_t len) { return BitVec(len); }
  static BitVec unit(std::size_t len, std::size_t i);
  /// Parses a string of '0'/'1' characters, bit 1 first.
  static BitVec from_bits(std::string_view bits);
  /// Parses the hex form produced by to_hex().
  static BitVec from_hex(std::string_view hex, std::size_t len);

  std::size_t size() const { return len_; }
  std::uint64_t word() const { return word_; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  bool is_zero() const { return word_ == 0; }
  int popcount() const { return std::popcount(word_); }

  /// Bits i..k inclusive (1-based) as a vector of length k - i + 1.
  BitVec slice(std::size_t i, std::size_t k) const;
  /// The first k bits; prefix(0) is the empty vector.
  BitVec prefix(std::size_t k) const;
  /// this || tail
  BitVec concat(const BitVec& tail) const;
  /// Inner product over Z_2.
  bool dot(const BitVec& other) const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec&, const BitVec&) = default;

  /// Lowercase hex, ceil(len/4) digits, bit 1 is the most significant bit of
  /// the first digit. Trailing pad bits are zero.
  std::string to_hex() const;
  /// '0'/'1' string, bit 1 first.
  std::string to_bits() const;

 private:
  std::size_t len_ = 0;
  std::uint64_t word_ = 0;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(std::span<const BitVec> rows);
  static BitMatrix from_rows(std::initializer_list<std::string_view> rows);
  /// Each entry becomes one column; all must share a length.
  static BitMatrix from_columns(std::span<const BitVec> cols,
                                std::size_t rows);
  /// [[top_left, top_right], [bottom_left, bottom_right]]
  static BitMatrix block(const BitMatrix& top_left, const BitMatrix& top_right,
                         const BitMatrix& bottom_left,
                         const BitMatrix& bottom_right);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);

  BitVec row(std::size_t i) const { return BitVec(cols_, rows_.at(i - 1)); }
  BitVec column(std::size_t j) const;
  std::span<const std::uint64_t> row_words() const { return rows_; }

  BitMatrix transpose() const;
  /// Column-wise concatenation [this | right].
  BitMatrix hconcat(const BitMatrix& right) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Row-space of a basis in canonical reduced row-echelon form: pivot columns
/// strictly ascending, each pivot column zero outside its pivot row. Two
/// Subspaces are equal iff their bases are bit-identical.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  /// Span of arbitrary generators (dependent generators are dropped).
  static Subspace span(std::size_t ambient_dim,
                       std::span<const BitVec> generators);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BitVec>& basis() const { return basis_; }
  BitMatrix basis_matrix() const;

  bool contains(const BitVec& v) const;
  bool contains(const Subspace& other) const;
  /// span(this, v)
  Subspace with(const BitVec& v) const;
  /// {x : x . b = 0 for every b in this}
  Subspace dual() const;
  /// All 2^dim elements, sorted ascending. Requires dim <= 24.
  std::vector<BitVec> elements() const;
  /// Element with coordinates `coeffs` (bit k selects basis vector k+1).
  BitVec combination(std::uint64_t coeffs) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  void insert(BitVec v);

  std::size_t ambient_;
  std::vector<BitVec> basis_;
};

// Core operations. Dimension mismatches throw std::invalid_argument; bad
// indices throw std::out_of_range.

/// M * v
BitVec mat_vec(const BitMatrix& m, const BitVec& v);
/// v^T * M
BitVec vec_mat(const BitVec& v, const BitMatrix& m);
/// M * N
BitMatrix mat_mul(const BitMatrix& m, const BitMatrix& n);
/// Columns j..k inclusive.
BitMatrix col_slice(const BitMatrix& m, std::size_t j, std::size_t k);
/// Rows i..k inclusive.
BitMatrix row_slice(const BitMatrix& m, std::size_t i, std::size_t k);
std::size_t rank(const BitMatrix& m);
/// Some w with M * w = t (free variables zero), or nullopt.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& t);
/// {w : M * w = 0}
Subspace kernel(const BitMatrix& m);
/// {v : v^T * M = 0}
Subspace left_null_space(const BitMatrix& m);
/// Span of the columns of M.
Subspace column_span(const BitMatrix& m);
Subspace canonical(const Subspace& s);
bool subspace_eq(const Subspace& a, const Subspace& b);

BitVec random_vec(Prg& rng, std::size_t len);
BitMatrix random_matrix(Prg& rng, std::size_t rows, std::size_t cols);
/// Uniform over full-column-rank rows x cols matrices: columns are drawn in
/// order, redrawing any column that lies in the span of the earlier ones.
BitMatrix sample_full_column_rank(Prg& rng, std::size_t rows,
                                  std::size_t cols);

}  // namespace osslab::gf2

#endif  // OSSLAB_GF2_HPP_
