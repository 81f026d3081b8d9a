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

#include "osslab/oracles.hpp"

#include <sodium.h>

#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace osslab {

using gf2::col_slice;
using gf2::low_mask;

// ------------------------------------------------------------------ Params

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kStandard: return "standard";
    case Variant::kIncompressible: return "incompressible";
    case Variant::kBloated: return "bloated";
    case Variant::kOriginal: return "original";
  }
  return "?";
}

std::string_view to_string(PermMode m) {
  return m == PermMode::kExplicitTable ? "explicit_table" : "feistel";
}

Variant variant_from_string(std::string_view s) {
  for (auto v : {Variant::kStandard, Variant::kIncompressible,
                 Variant::kBloated, Variant::kOriginal})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

PermMode perm_mode_from_string(std::string_view s) {
  if (s == "explicit_table") return PermMode::kExplicitTable;
  if (s == "feistel") return PermMode::kFeistel;
  throw std::invalid_argument("unknown perm_mode: " + std::string(s));
}

Params Params::from_lambda(unsigned lambda, Variant variant) {
  Params p;
  p.lambda = lambda;
  p.variant = variant;
  const std::size_t lam = lambda;
  if (variant == Variant::kIncompressible) {
    p.s = 16 * (lam + 1);
    p.r = p.s * lam;
    p.l = lam + 1;
  } else {
    if (lambda < 2)
      throw std::invalid_argument("lambda must be >= 2 (lambda = 1 gives r = 0)");
    p.s = 16 * lam;
    p.r = p.s * (lam - 1);
    p.l = lam;
  }
  p.n = p.r + p.l + 3 * p.s / 2;
  p.perm_mode = p.n <= kMaxTableBits ? PermMode::kExplicitTable : PermMode::kFeistel;
  return p;
}

Params Params::toy(std::size_t n, std::size_t r, std::size_t l, std::size_t s,
                   Variant variant, PermMode mode) {
  Params p;
  p.n = n;
  p.r = r;
  p.l = l;
  p.s = s;
  p.variant = variant;
  p.perm_mode = mode;
  return p;
}

void Params::validate_shape() const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (r + l > n) throw std::invalid_argument("need r + l <= n");
  if (r + l + s > n) throw std::invalid_argument("need r + s + l <= n");
  if (variant == Variant::kIncompressible && l < 1)
    throw std::invalid_argument("incompressible variant needs l >= 1");
}

void Params::validate_buildable() const {
  validate_shape();
  if (perm_mode == PermMode::kExplicitTable && n > kMaxTableBits)
    throw std::invalid_argument("explicit_table mode supports n <= 24");
  if (perm_mode == PermMode::kFeistel && (n < 2 || n > kMaxFeistelBits))
    throw std::invalid_argument("feistel mode supports 2 <= n <= 64");
}

// ------------------------------------------------------------ permutation

PermutationEngine::PermutationEngine(const Seed& seed, std::size_t n,
                                     PermMode mode)
    : n_(n), mode_(mode) {
  if (mode == PermMode::kExplicitTable) {
    if (n > kMaxTableBits)
      throw std::invalid_argument("explicit permutation table needs n <= 24");
    const std::size_t size = std::size_t{1} << n;
    fwd_.resize(size);
    std::iota(fwd_.begin(), fwd_.end(), 0u);
    Prg rng = Prg::derive(seed, "perm");
    for (std::size_t i = size; i-- > 1;)
      std::swap(fwd_[i], fwd_[rng.below(i + 1)]);
    inv_.resize(size);
    for (std::size_t x = 0; x < size; ++x) inv_[fwd_[x]] = static_cast<std::uint32_t>(x);
  } else {
    if (n < 2 || n > kMaxFeistelBits)
      throw std::invalid_argument("feistel permutation needs 2 <= n <= 64");
    left_bits_ = (n + 1) / 2;
    right_bits_ = n - left_bits_;
    Prg rng = Prg::derive(seed, "feistel");
    round_keys_.resize(kFeistelRounds);
    for (auto& key : round_keys_)
      for (std::size_t b = 0; b < key.size(); b += 8) {
        std::uint64_t v = rng();
        for (int k = 0; k < 8; ++k) key[b + k] = static_cast<std::uint8_t>(v >> (8 * k));
      }
  }
}

std::uint64_t PermutationEngine::round_fn(int round, std::uint64_t half,
                                          std::size_t out_bits) const {
  std::array<std::uint8_t, 8> in{};
  for (int k = 0; k < 8; ++k) in[k] = static_cast<std::uint8_t>(half >> (8 * k));
  std::array<std::uint8_t, crypto_shorthash_siphash24_BYTES> out{};
  crypto_shorthash_siphash24(out.data(), in.data(), in.size(),
                             round_keys_[round].data());
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(out[k]) << (8 * k);
  return v & low_mask(out_bits);
}

std::uint64_t PermutationEngine::forward(std::uint64_t x) const {
  if (mode_ == PermMode::kExplicitTable) return fwd_.at(x);
  std::uint64_t left = x >> right_bits_;
  std::uint64_t right = x & low_mask(right_bits_);
  for (int k = 0; k < kFeistelRounds; ++k) {
    if (k % 2 == 0)
      left ^= round_fn(k, right, left_bits_);
    else
      right ^= round_fn(k, left, right_bits_);
  }
  return (left << right_bits_) | right;
}

std::uint64_t PermutationEngine::inverse(std::uint64_t z) const {
  if (mode_ == PermMode::kExplicitTable) return inv_.at(z);
  std::uint64_t left = z >> right_bits_;
  std::uint64_t right = z & low_mask(right_bits_);
  for (int k = kFeistelRounds; k-- > 0;) {
    if (k % 2 == 0)
      left ^= round_fn(k, right, left_bits_);
    else
      right ^= round_fn(k, left, right_bits_);
  }
  return (left << right_bits_) | right;
}

// ------------------------------------------------------------ coset family

CosetData derive_coset(const Params& params, const Seed& seed,
                       const BitVec& y) {
  const std::size_t n = params.n, r = params.r, l = params.l;
  if (y.size() != r) throw std::invalid_argument("derive_coset: y.len != r");
  Prg rng = Prg::derive(seed, "coset", y.word());
  CosetData c;
  if (params.variant == Variant::kOriginal) {
    c.a = gf2::sample_full_column_rank(rng, n, n - r);
  } else {
    BitMatrix b_block = gf2::random_matrix(rng, n - l, l);
    BitMatrix c_block = gf2::sample_full_column_rank(rng, n - l, n - r - l);
    c.a = BitMatrix::block(BitMatrix::identity(l), BitMatrix(l, n - r - l),
                           b_block, c_block);
  }
  c.b = gf2::random_vec(rng, n);
  if (params.variant == Variant::kIncompressible) c.b.set(l, true);
  return c;
}

// -------------------------------------------------------------- bloating

namespace {

BitMatrix select_columns(const BitMatrix& a, std::size_t j, std::size_t l,
                         std::size_t s) {
  const std::size_t width = a.cols();
  BitMatrix m(a.rows(), 0);
  if (j <= l) m = m.hconcat(col_slice(a, j, l));
  if (l + s + 1 <= width) m = m.hconcat(col_slice(a, l + s + 1, width));
  return m;
}

}  // namespace

std::vector<Subspace> dual_chain(const BitMatrix& a, std::size_t l) {
  std::vector<Subspace> chain;
  for (std::size_t j = 1; j <= l + 1; ++j) {
    if (j > a.cols())
      chain.push_back(Subspace::full(a.rows()));
    else
      chain.push_back(gf2::left_null_space(col_slice(a, j, a.cols())));
  }
  return chain;
}

std::vector<Subspace> bloated_chain(const BitMatrix& a_bar, std::size_t l,
                                    std::size_t s) {
  std::vector<Subspace> chain;
  for (std::size_t j = 1; j <= l + 1; ++j)
    chain.push_back(gf2::left_null_space(select_columns(a_bar, j, l, s)));
  return chain;
}

BitMatrix bloat_matrix(const BitMatrix& a, std::size_t l, const BitMatrix& m,
                       const BitMatrix& m_prime) {
  const std::size_t k = a.cols() - l;
  if (m.rows() != k || m.cols() != k || m_prime.rows() != k || m_prime.cols() != l)
    throw std::invalid_argument("bloat_matrix: M must be k x k and M' k x l");
  return gf2::mat_mul(
      a, BitMatrix::block(BitMatrix::identity(l), BitMatrix(l, k), m_prime, m));
}

std::vector<Subspace> bloat_with_vectors(const BitMatrix& a, std::size_t l,
                                         std::span<const BitVec> vs) {
  auto chain = dual_chain(a, l);
  for (auto& t : chain)
    for (const auto& v : vs) t = t.with(v);
  return chain;
}

BloatData sample_bloat_matrix_form(const BitMatrix& a, std::size_t l,
                                   std::size_t s, Prg& rng) {
  if (l > a.cols() || a.cols() - l < s)
    throw std::invalid_argument("bloat: need n - r - l >= s");
  const std::size_t k = a.cols() - l;
  BitMatrix m = gf2::sample_full_column_rank(rng, k, k);
  BitMatrix m_prime = gf2::random_matrix(rng, k, l);
  BloatData out;
  out.form = BloatForm::kMatrix;
  out.a_bar = bloat_matrix(a, l, m, m_prime);
  out.accept = bloated_chain(*out.a_bar, l, s);
  return out;
}

BloatData sample_bloat_vector_form(const BitMatrix& a, std::size_t l,
                                   std::size_t s, Prg& rng) {
  if (l > a.cols() || a.cols() - l < s)
    throw std::invalid_argument("bloat: need n - r - l >= s");
  Subspace avoid = dual_chain(a, l).back();
  std::vector<BitVec> vs;
  while (vs.size() < s) {
    BitVec v = gf2::random_vec(rng, a.rows());
    if (avoid.contains(v)) continue;
    avoid = avoid.with(v);
    vs.push_back(v);
  }
  BloatData out;
  out.form = BloatForm::kVectors;
  out.accept = bloat_with_vectors(a, l, vs);
  return out;
}

// ---------------------------------------------------------- DualPredicate

DualPredicate::DualPredicate(const BitMatrix& m) {
  columns_.reserve(m.cols());
  for (std::size_t j = 1; j <= m.cols(); ++j) columns_.push_back(m.column(j).word());
}

DualPredicate DualPredicate::reject_all() {
  DualPredicate p;
  p.reject_all_ = true;
  return p;
}

bool DualPredicate::accepts(std::uint64_t v) const {
  if (reject_all_) return false;
  for (auto c : columns_)
    if (std::popcount(v & c) & 1) return false;
  return true;
}

// --------------------------------------------------------------- OracleSet

struct OracleSet::State {
  State(const Seed& seed, const Params& p) : perm(seed, p.n, p.perm_mode) {}

  PermutationEngine perm;

  mutable std::shared_mutex mu;
  mutable std::unordered_map<std::uint64_t, CosetData> cosets;
  std::optional<Seed> bloat_key;
  BloatForm bloat_form = BloatForm::kMatrix;
  mutable std::unordered_map<std::uint64_t, BloatData> bloats;

  std::atomic<std::uint64_t> p{0}, p_inv{0}, d{0}, d0{0}, d_prime{0};
};

OracleSet::OracleSet(WorldSpec spec)
    : spec_(std::move(spec)),
      state_(std::make_unique<State>(spec_.seed, spec_.params)) {}
OracleSet::OracleSet(OracleSet&&) noexcept = default;
OracleSet& OracleSet::operator=(OracleSet&&) noexcept = default;
OracleSet::~OracleSet() = default;

OracleSet build_oracles(const Params& params, const Seed& seed) {
  params.validate_buildable();
  OracleSet o(WorldSpec{params, seed});
  if (params.variant == Variant::kBloated) {
    Prg rng = Prg::derive(seed, "bloat-key");
    o.sample_bloated(rng, BloatForm::kMatrix);
  }
  return o;
}

const CosetData& OracleSet::coset(const BitVec& y) const {
  if (y.size() != params().r) throw std::invalid_argument("coset: y.len != r");
  {
    std::shared_lock lock(state_->mu);
    auto it = state_->cosets.find(y.word());
    if (it != state_->cosets.end()) return it->second;
  }
  CosetData fresh = derive_coset(params(), seed(), y);
  std::unique_lock lock(state_->mu);
  return state_->cosets.try_emplace(y.word(), std::move(fresh)).first->second;
}

const PermutationEngine& OracleSet::permutation() const { return state_->perm; }

BitVec OracleSet::pi_forward(const BitVec& x) const {
  if (x.size() != params().n) throw std::invalid_argument("pi: x.len != n");
  return BitVec(params().n, state_->perm.forward(x.word()));
}

BitVec OracleSet::pi_inverse(const BitVec& z) const {
  if (z.size() != params().n) throw std::invalid_argument("pi^-1: z.len != n");
  return BitVec(params().n, state_->perm.inverse(z.word()));
}

BitVec OracleSet::h(const BitVec& x) const {
  return pi_forward(x).prefix(params().r);
}

std::pair<BitVec, BitVec> OracleSet::p(const BitVec& x) {
  const std::size_t n = params().n, r = params().r;
  BitVec z = pi_forward(x);
  state_->p.fetch_add(1, std::memory_order_relaxed);
  BitVec y = z.prefix(r);
  BitVec w(n - r, z.word() & low_mask(n - r));
  const CosetData& c = coset(y);
  return {y, gf2::mat_vec(c.a, w) ^ c.b};
}

std::optional<BitVec> OracleSet::p_inv(const BitVec& y, const BitVec& u) {
  if (u.size() != params().n) throw std::invalid_argument("P^-1: u.len != n");
  const CosetData& c = coset(y);
  state_->p_inv.fetch_add(1, std::memory_order_relaxed);
  auto w = gf2::solve(c.a, u ^ c.b);
  if (!w) return std::nullopt;
  return pi_inverse(y.concat(*w));
}

bool OracleSet::in_coset(const BitVec& y, const BitVec& u) const {
  if (u.size() != params().n) throw std::invalid_argument("D0: u.len != n");
  const CosetData& c = coset(y);
  return gf2::solve(c.a, u ^ c.b).has_value();
}

DualPredicate OracleSet::dual_predicate(std::size_t j, const BitVec& y) const {
  if (j < 1 || j > params().l + 1) return DualPredicate::reject_all();
  const CosetData& c = coset(y);
  if (j > c.a.cols()) return DualPredicate(BitMatrix(params().n, 0));
  return DualPredicate(col_slice(c.a, j, c.a.cols()));
}

bool OracleSet::d(std::size_t j, const BitVec& y, const BitVec& v) {
  if (v.size() != params().n) throw std::invalid_argument("D: v.len != n");
  state_->d.fetch_add(1, std::memory_order_relaxed);
  return dual_predicate(j, y)(v);
}

bool OracleSet::d0(const BitVec& y, const BitVec& u) {
  state_->d0.fetch_add(1, std::memory_order_relaxed);
  return in_coset(y, u);
}

void OracleSet::sample_bloated(Prg& rng, BloatForm form) {
  const auto& p = params();
  if (p.n - p.r - p.l < p.s)
    throw std::invalid_argument("sample_bloated: need n - r - l >= s");
  Seed key{};
  for (std::size_t b = 0; b < key.size(); b += 8) {
    std::uint64_t v = rng();
    for (int k = 0; k < 8; ++k) key[b + k] = static_cast<std::uint8_t>(v >> (8 * k));
  }
  std::unique_lock lock(state_->mu);
  state_->bloat_key = key;
  state_->bloat_form = form;
  state_->bloats.clear();
}

bool OracleSet::has_bloat() const {
  std::shared_lock lock(state_->mu);
  return state_->bloat_key.has_value();
}

const BloatData& OracleSet::bloat(const BitVec& y) const {
  Seed key;
  BloatForm form;
  {
    std::shared_lock lock(state_->mu);
    if (!state_->bloat_key)
      throw std::logic_error("bloated dual used before sample_bloated");
    auto it = state_->bloats.find(y.word());
    if (it != state_->bloats.end()) return it->second;
    key = *state_->bloat_key;
    form = state_->bloat_form;
  }
  const CosetData& c = coset(y);
  Prg rng = Prg::derive(key, "bloat", y.word());
  BloatData fresh = form == BloatForm::kMatrix
                        ? sample_bloat_matrix_form(c.a, params().l, params().s, rng)
                        : sample_bloat_vector_form(c.a, params().l, params().s, rng);
  std::unique_lock lock(state_->mu);
  return state_->bloats.try_emplace(y.word(), std::move(fresh)).first->second;
}

bool OracleSet::d_bloated(std::size_t j, const BitVec& y, const BitVec& v) {
  if (v.size() != params().n) throw std::invalid_argument("D': v.len != n");
  const BloatData& bd = bloat(y);
  state_->d_prime.fetch_add(1, std::memory_order_relaxed);
  if (j < 1 || j > params().l + 1) return false;
  if (bd.form == BloatForm::kMatrix)
    return gf2::vec_mat(v, select_columns(*bd.a_bar, j, params().l, params().s))
        .is_zero();
  return bd.accept[j - 1].contains(v);
}

void OracleSet::record_query(Oracle which, std::uint64_t count) {
  switch (which) {
    case Oracle::kP: state_->p += count; break;
    case Oracle::kPinv: state_->p_inv += count; break;
    case Oracle::kD: state_->d += count; break;
    case Oracle::kD0: state_->d0 += count; break;
    case Oracle::kDprime: state_->d_prime += count; break;
  }
}

QueryCounts OracleSet::counts() const {
  return {state_->p.load(), state_->p_inv.load(), state_->d.load(),
          state_->d0.load(), state_->d_prime.load()};
}

void OracleSet::reset_counts() {
  state_->p = 0;
  state_->p_inv = 0;
  state_->d = 0;
  state_->d0 = 0;
  state_->d_prime = 0;
}

}  // namespace osslab
