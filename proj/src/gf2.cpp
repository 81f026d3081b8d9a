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

#include "osslab/gf2.hpp"

#include <algorithm>
#include <cstdio>

namespace osslab::gf2 {
namespace {

std::uint64_t shl(std::uint64_t x, std::size_t k) { return k >= 64 ? 0 : x << k; }
std::uint64_t shr(std::uint64_t x, std::size_t k) { return k >= 64 ? 0 : x >> k; }

void check_len(std::size_t len) {
  if (len > kMaxBits) throw std::invalid_argument("gf2: length exceeds 64 bits");
}

bool parity(std::uint64_t x) { return (std::popcount(x) & 1) != 0; }

/// Word position of the leading bit; x must be nonzero.
std::size_t lead_pos(std::uint64_t x) {
  return 63 - static_cast<std::size_t>(std::countl_zero(x));
}

// Gauss-Jordan elimination over row words, optionally carrying a right-hand
// side bit per row. Produces full RREF; pivot_pos[k] is the word position of
// row k's pivot and rows are ordered by descending pivot position.
struct Echelon {
  std::vector<std::uint64_t> rows;
  std::vector<bool> rhs;
  std::vector<std::size_t> pivot_pos;
  bool inconsistent = false;

  Echelon(std::span<const std::uint64_t> input, std::vector<bool> rhs_in,
          std::size_t cols)
      : rhs(std::move(rhs_in)) {
    std::vector<std::uint64_t> work(input.begin(), input.end());
    if (rhs.empty()) rhs.assign(work.size(), false);
    std::size_t next = 0;
    for (std::size_t p = cols; p-- > 0 && next < work.size();) {
      const std::uint64_t bit = std::uint64_t{1} << p;
      std::size_t sel = next;
      while (sel < work.size() && !(work[sel] & bit)) ++sel;
      if (sel == work.size()) continue;
      std::swap(work[sel], work[next]);
      std::swap(rhs[sel], rhs[next]);
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i != next && (work[i] & bit)) {
          work[i] ^= work[next];
          rhs[i] = rhs[i] != rhs[next];
        }
      }
      pivot_pos.push_back(p);
      ++next;
    }
    for (std::size_t i = next; i < work.size(); ++i)
      if (rhs[i]) inconsistent = true;
    rows.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(next));
    rhs.resize(next);
  }
};

}  // namespace

// ---------------------------------------------------------------- BitVec

BitVec::BitVec(std::size_t len) : len_(len) { check_len(len); }

BitVec::BitVec(std::size_t len, std::uint64_t word) : len_(len), word_(word) {
  check_len(len);
  if (word & ~low_mask(len))
    throw std::invalid_argument("BitVec: word has bits beyond length");
}

BitVec BitVec::unit(std::size_t len, std::size_t i) {
  BitVec v(len);
  v.set(i, true);
  return v;
}

BitVec BitVec::from_bits(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i + 1, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("BitVec::from_bits: expected 0/1");
  }
  return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t len) {
  check_len(len);
  const std::size_t digits = (len + 3) / 4;
  if (hex.size() != digits)
    throw std::invalid_argument("BitVec::from_hex: wrong digit count");
  std::uint64_t value = 0;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else
      throw std::invalid_argument("BitVec::from_hex: expected lowercase hex");
    value = shl(value, 4) | static_cast<std::uint64_t>(d);
  }
  const std::size_t pad = 4 * digits - len;
  if (value & low_mask(pad))
    throw std::invalid_argument("BitVec::from_hex: nonzero padding bits");
  return BitVec(len, shr(value, pad));
}

bool BitVec::get(std::size_t i) const {
  if (i < 1 || i > len_) throw std::out_of_range("BitVec::get");
  return (word_ >> (len_ - i)) & 1;
}

void BitVec::set(std::size_t i, bool value) {
  if (i < 1 || i > len_) throw std::out_of_range("BitVec::set");
  const std::uint64_t bit = std::uint64_t{1} << (len_ - i);
  word_ = value ? (word_ | bit) : (word_ & ~bit);
}

void BitVec::flip(std::size_t i) {
  if (i < 1 || i > len_) throw std::out_of_range("BitVec::flip");
  word_ ^= std::uint64_t{1} << (len_ - i);
}

BitVec BitVec::slice(std::size_t i, std::size_t k) const {
  if (i < 1 || k > len_ || i > k + 1) throw std::out_of_range("BitVec::slice");
  const std::size_t out = k + 1 - i;
  return BitVec(out, shr(word_, len_ - k) & low_mask(out));
}

BitVec BitVec::prefix(std::size_t k) const {
  if (k > len_) throw std::out_of_range("BitVec::prefix");
  return BitVec(k, shr(word_, len_ - k));
}

BitVec BitVec::concat(const BitVec& tail) const {
  return BitVec(len_ + tail.len_, shl(word_, tail.len_) | tail.word_);
}

bool BitVec::dot(const BitVec& other) const {
  if (len_ != other.len_) throw std::invalid_argument("BitVec::dot: lengths");
  return parity(word_ & other.word_);
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (len_ != other.len_) throw std::invalid_argument("BitVec ^: lengths");
  word_ ^= other.word_;
  return *this;
}

std::string BitVec::to_hex() const {
  const std::size_t digits = (len_ + 3) / 4;
  const std::uint64_t value = shl(word_, 4 * digits - len_);
  std::string out(digits, '0');
  static constexpr char kDigits[] = "0123456789abcdef";
  for (std::size_t d = 0; d < digits; ++d)
    out[d] = kDigits[(value >> (4 * (digits - 1 - d))) & 0xf];
  return out;
}

std::string BitVec::to_bits() const {
  std::string out(len_, '0');
  for (std::size_t i = 1; i <= len_; ++i)
    if (get(i)) out[i - 1] = '1';
  return out;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, 0) {
  check_len(cols);
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVec> rows) {
  if (rows.empty()) return BitMatrix();
  BitMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_)
      throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
    m.rows_[i] = rows[i].word();
  }
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  std::vector<BitVec> vs;
  for (auto r : rows) vs.push_back(BitVec::from_bits(r));
  return from_rows(vs);
}

BitMatrix BitMatrix::from_columns(std::span<const BitVec> cols,
                                  std::size_t rows) {
  BitMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("BitMatrix::from_columns: column length");
    for (std::size_t i = 1; i <= rows; ++i)
      if (cols[j].get(i)) m.set(i, j + 1, true);
  }
  return m;
}

BitMatrix BitMatrix::block(const BitMatrix& tl, const BitMatrix& tr,
                           const BitMatrix& bl, const BitMatrix& br) {
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() ||
      tl.cols() != bl.cols() || tr.cols() != br.cols())
    throw std::invalid_argument("BitMatrix::block: incompatible blocks");
  BitMatrix m(tl.rows() + bl.rows(), tl.cols() + tr.cols());
  for (std::size_t i = 0; i < tl.rows(); ++i)
    m.rows_[i] = shl(tl.rows_[i], tr.cols()) | tr.rows_[i];
  for (std::size_t i = 0; i < bl.rows(); ++i)
    m.rows_[tl.rows() + i] = shl(bl.rows_[i], br.cols()) | br.rows_[i];
  return m;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows() || j < 1 || j > cols_)
    throw std::out_of_range("BitMatrix::get");
  return (rows_[i - 1] >> (cols_ - j)) & 1;
}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i < 1 || i > rows() || j < 1 || j > cols_)
    throw std::out_of_range("BitMatrix::set");
  const std::uint64_t bit = std::uint64_t{1} << (cols_ - j);
  rows_[i - 1] = value ? (rows_[i - 1] | bit) : (rows_[i - 1] & ~bit);
}

BitVec BitMatrix::column(std::size_t j) const {
  if (j < 1 || j > cols_) throw std::out_of_range("BitMatrix::column");
  BitVec v(rows());
  for (std::size_t i = 1; i <= rows(); ++i)
    if (get(i, j)) v.set(i, true);
  return v;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t i = 1; i <= rows(); ++i)
    for (std::size_t j = 1; j <= cols_; ++j)
      if (get(i, j)) t.set(j, i, true);
  return t;
}

BitMatrix BitMatrix::hconcat(const BitMatrix& right) const {
  if (rows() != right.rows())
    throw std::invalid_argument("BitMatrix::hconcat: row counts differ");
  BitMatrix m(rows(), cols_ + right.cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    m.rows_[i] = shl(rows_[i], right.cols_) | right.rows_[i];
  return m;
}

// ---------------------------------------------------------------- Subspace

void Subspace::insert(BitVec v) {
  if (v.size() != ambient_)
    throw std::invalid_argument("Subspace: vector length != ambient dim");
  for (const auto& b : basis_)
    if (v.word() & (std::uint64_t{1} << lead_pos(b.word()))) v ^= b;
  if (v.is_zero()) return;
  const std::uint64_t pivot = std::uint64_t{1} << lead_pos(v.word());
  for (auto& b : basis_)
    if (b.word() & pivot) b ^= v;
  auto at = std::find_if(basis_.begin(), basis_.end(), [&](const BitVec& b) {
    return b.word() < v.word();
  });
  basis_.insert(at, v);
}

Subspace Subspace::span(std::size_t ambient_dim,
                        std::span<const BitVec> generators) {
  check_len(ambient_dim);
  Subspace s(ambient_dim);
  for (const auto& g : generators) s.insert(g);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 1; i <= ambient_dim; ++i)
    s.insert(BitVec::unit(ambient_dim, i));
  return s;
}

BitMatrix Subspace::basis_matrix() const {
  if (basis_.empty()) return BitMatrix(0, ambient_);
  return BitMatrix::from_rows(basis_);
}

bool Subspace::contains(const BitVec& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("Subspace::contains: length");
  std::uint64_t w = v.word();
  for (const auto& b : basis_)
    if (w & (std::uint64_t{1} << lead_pos(b.word()))) w ^= b.word();
  return w == 0;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const BitVec& b) { return contains(b); });
}

Subspace Subspace::with(const BitVec& v) const {
  Subspace s = *this;
  s.insert(v);
  return s;
}

Subspace Subspace::dual() const { return kernel(basis_matrix()); }

BitVec Subspace::combination(std::uint64_t coeffs) const {
  BitVec v(ambient_);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if ((coeffs >> k) & 1) v ^= basis_[k];
  return v;
}

std::vector<BitVec> Subspace::elements() const {
  if (dim() > 24) throw std::length_error("Subspace::elements: dim > 24");
  std::vector<BitVec> out;
  out.reserve(std::size_t{1} << dim());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << dim()); ++c)
    out.push_back(combination(c));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- operations

BitVec mat_vec(const BitMatrix& m, const BitVec& v) {
  if (v.size() != m.cols())
    throw std::invalid_argument("mat_vec: v.len != M.cols");
  check_len(m.rows());
  std::uint64_t out = 0;
  const auto rows = m.row_words();
  for (std::size_t i = 0; i < rows.size(); ++i)
    out = (out << 1) | static_cast<std::uint64_t>(parity(rows[i] & v.word()));
  return BitVec(m.rows(), out);
}

BitVec vec_mat(const BitVec& v, const BitMatrix& m) {
  if (v.size() != m.rows())
    throw std::invalid_argument("vec_mat: v.len != M.rows");
  std::uint64_t out = 0;
  const auto rows = m.row_words();
  const std::uint64_t w = v.word();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if ((w >> (rows.size() - 1 - i)) & 1) out ^= rows[i];
  return BitVec(m.cols(), out);
}

BitMatrix mat_mul(const BitMatrix& m, const BitMatrix& n) {
  if (m.cols() != n.rows())
    throw std::invalid_argument("mat_mul: inner dimensions differ");
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 1; i <= m.rows(); ++i)
    rows.push_back(vec_mat(m.row(i), n));
  if (rows.empty()) return BitMatrix(0, n.cols());
  return BitMatrix::from_rows(rows);
}

BitMatrix col_slice(const BitMatrix& m, std::size_t j, std::size_t k) {
  if (j < 1 || j > k || k > m.cols())
    throw std::out_of_range("col_slice: need 1 <= j <= k <= cols");
  const std::size_t width = k - j + 1;
  BitMatrix out(m.rows(), width);
  const auto rows = m.row_words();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint64_t bits = shr(rows[i], m.cols() - k) & low_mask(width);
    for (std::size_t c = 1; c <= width; ++c)
      if ((bits >> (width - c)) & 1) out.set(i + 1, c, true);
  }
  return out;
}

BitMatrix row_slice(const BitMatrix& m, std::size_t i, std::size_t k) {
  if (i < 1 || i > k || k > m.rows())
    throw std::out_of_range("row_slice: need 1 <= i <= k <= rows");
  std::vector<BitVec> rows;
  for (std::size_t r = i; r <= k; ++r) rows.push_back(m.row(r));
  return BitMatrix::from_rows(rows);
}

std::size_t rank(const BitMatrix& m) {
  return Echelon(m.row_words(), {}, m.cols()).rows.size();
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& t) {
  if (t.size() != m.rows())
    throw std::invalid_argument("solve: t.len != M.rows");
  std::vector<bool> rhs(m.rows());
  for (std::size_t i = 1; i <= m.rows(); ++i) rhs[i - 1] = t.get(i);
  Echelon e(m.row_words(), std::move(rhs), m.cols());
  if (e.inconsistent) return std::nullopt;
  std::uint64_t w = 0;
  for (std::size_t k = 0; k < e.rows.size(); ++k)
    if (e.rhs[k]) w |= std::uint64_t{1} << e.pivot_pos[k];
  return BitVec(m.cols(), w);
}

Subspace kernel(const BitMatrix& m) {
  Echelon e(m.row_words(), {}, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivot_pos) is_pivot[p] = true;
  std::vector<BitVec> gens;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::uint64_t x = std::uint64_t{1} << f;
    for (std::size_t k = 0; k < e.rows.size(); ++k)
      if ((e.rows[k] >> f) & 1) x |= std::uint64_t{1} << e.pivot_pos[k];
    gens.emplace_back(m.cols(), x);
  }
  return Subspace::span(m.cols(), gens);
}

Subspace left_null_space(const BitMatrix& m) { return kernel(m.transpose()); }

Subspace column_span(const BitMatrix& m) {
  std::vector<BitVec> cols;
  for (std::size_t j = 1; j <= m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span(m.rows(), cols);
}

Subspace canonical(const Subspace& s) {
  return Subspace::span(s.ambient_dim(), s.basis());
}

bool subspace_eq(const Subspace& a, const Subspace& b) {
  return canonical(a) == canonical(b);
}

BitVec random_vec(Prg& rng, std::size_t len) {
  return BitVec(len, rng.bits(len));
}

BitMatrix random_matrix(Prg& rng, std::size_t rows, std::size_t cols) {
  std::vector<BitVec> rs;
  rs.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) rs.push_back(random_vec(rng, cols));
  if (rs.empty()) return BitMatrix(0, cols);
  return BitMatrix::from_rows(rs);
}

BitMatrix sample_full_column_rank(Prg& rng, std::size_t rows,
                                  std::size_t cols) {
  if (cols > rows)
    throw std::invalid_argument("sample_full_column_rank: cols > rows");
  std::vector<BitVec> columns;
  Subspace spanned(rows);
  while (columns.size() < cols) {
    BitVec c = random_vec(rng, rows);
    if (spanned.contains(c)) continue;
    spanned = spanned.with(c);
    columns.push_back(c);
  }
  return BitMatrix::from_columns(columns, rows);
}

}  // namespace osslab::gf2
