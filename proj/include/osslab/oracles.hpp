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

#ifndef OSSLAB_ORACLES_HPP_
#define OSSLAB_ORACLES_HPP_

// Seeded, deterministic realisation of the oracle worlds: the permutation
// Pi, the per-y coset data (A_y, b_y) derived from F(y), and the oracles
// P, P^-1, D, D0 and the bloated dual D'.
//
// All world randomness flows from the 32-byte world seed. Experiment
// randomness is passed in separately as a Prg.

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osslab/gf2.hpp"
#include "osslab/prg.hpp"

namespace osslab {

using gf2::BitMatrix;
using gf2::BitVec;
using gf2::Subspace;

enum class Variant {
  kStandard,
  kIncompressible,
  kBloated,
  /// Unstructured full-column-rank A_y, as in the earlier construction the
  /// collapsing distinguisher targets. Cannot be used for signing.
  kOriginal,
};
enum class PermMode { kExplicitTable, kFeistel };

std::string_view to_string(Variant v);
std::string_view to_string(PermMode m);
Variant variant_from_string(std::string_view s);
PermMode perm_mode_from_string(std::string_view s);

inline constexpr std::size_t kMaxTableBits = 24;
inline constexpr std::size_t kMaxFeistelBits = 64;

struct Params {
  std::optional<unsigned> lambda;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t l = 0;
  std::size_t s = 0;
  Variant variant = Variant::kStandard;
  PermMode perm_mode = PermMode::kExplicitTable;

  /// s = 16*lambda, r = s*(lambda-1), l = lambda, n = r + l + 3s/2; the
  /// incompressible rule shifts lambda by one in s, r and l.
  static Params from_lambda(unsigned lambda,
                            Variant variant = Variant::kStandard);
  static Params toy(std::size_t n, std::size_t r, std::size_t l,
                    std::size_t s = 0, Variant variant = Variant::kStandard,
                    PermMode mode = PermMode::kExplicitTable);

  /// Structural checks (r + l <= n and variant rules). Throws
  /// std::invalid_argument.
  void validate_shape() const;
  /// validate_shape() plus the size limits of the permutation engine.
  void validate_buildable() const;
  bool structured() const { return variant != Variant::kOriginal; }

  friend bool operator==(const Params&, const Params&) = default;
};

/// A world is never stored by value: (params, seed) identifies it.
struct WorldSpec {
  Params params;
  Seed seed{};
  friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

/// Pi and its inverse over {0,1}^n.
class PermutationEngine {
 public:
  PermutationEngine(const Seed& seed, std::size_t n, PermMode mode);

  std::size_t bits() const { return n_; }
  PermMode mode() const { return mode_; }
  std::uint64_t forward(std::uint64_t x) const;
  std::uint64_t inverse(std::uint64_t z) const;

  static constexpr int kFeistelRounds = 12;

 private:
  std::uint64_t round_fn(int round, std::uint64_t half, std::size_t out_bits) const;

  std::size_t n_;
  PermMode mode_;
  std::vector<std::uint32_t> fwd_;
  std::vector<std::uint32_t> inv_;
  std::size_t left_bits_ = 0;
  std::size_t right_bits_ = 0;
  std::vector<std::array<std::uint8_t, 16>> round_keys_;
};

/// (A_y, b_y) for one y.
struct CosetData {
  BitMatrix a;  // n x (n - r)
  BitVec b;     // n
};

/// Derives (A_y, b_y) from (seed, "coset", y). Sampling order inside the
/// stream: B_y row-major, then C_y column by column (with rejection), then
/// b_y. The original variant draws A_y column by column, then b_y.
CosetData derive_coset(const Params& params, const Seed& seed,
                       const BitVec& y);

enum class BloatForm {
  /// Ā_y = A_y [[I, 0], [M', M]] with M full rank.
  kMatrix,
  /// s linearly independent vectors whose span meets S_{l+1} only in 0.
  kVectors,
};

/// T_1, ..., T_{l+1} (the bloated accept sets) plus Ā_y in matrix form.
struct BloatData {
  BloatForm form = BloatForm::kMatrix;
  std::optional<BitMatrix> a_bar;
  std::vector<Subspace> accept;
};

/// S_j = ColSpan(A^{[j:n-r]})^perp for j = 1..l+1.
std::vector<Subspace> dual_chain(const BitMatrix& a, std::size_t l);
/// ColSpan([Ā^{[j:l]} Ā^{[l+s+1:n-r]}])^perp for j = 1..l+1.
std::vector<Subspace> bloated_chain(const BitMatrix& a_bar, std::size_t l,
                                    std::size_t s);
/// Ā = A [[I_l, 0], [m_prime, m]].
BitMatrix bloat_matrix(const BitMatrix& a, std::size_t l, const BitMatrix& m,
                       const BitMatrix& m_prime);
/// span(S_j, v_1, ..., v_s) for j = 1..l+1.
std::vector<Subspace> bloat_with_vectors(const BitMatrix& a, std::size_t l,
                                         std::span<const BitVec> vs);
BloatData sample_bloat_matrix_form(const BitMatrix& a, std::size_t l,
                                   std::size_t s, Prg& rng);
BloatData sample_bloat_vector_form(const BitMatrix& a, std::size_t l,
                                   std::size_t s, Prg& rng);

/// Membership test v^T M = 0 for a fixed M, evaluated without touching the
/// query counters. An empty M accepts everything.
class DualPredicate {
 public:
  DualPredicate() = default;
  explicit DualPredicate(const BitMatrix& m);
  static DualPredicate reject_all();

  bool operator()(const BitVec& v) const { return accepts(v.word()); }
  bool accepts(std::uint64_t v) const;

 private:
  std::vector<std::uint64_t> columns_;
  bool reject_all_ = false;
};

enum class Oracle { kP, kPinv, kD, kD0, kDprime };

struct QueryCounts {
  std::uint64_t p = 0;
  std::uint64_t p_inv = 0;
  std::uint64_t d = 0;
  std::uint64_t d0 = 0;
  std::uint64_t d_prime = 0;

  QueryCounts operator-(const QueryCounts& o) const {
    return {p - o.p, p_inv - o.p_inv, d - o.d, d0 - o.d0, d_prime - o.d_prime};
  }
  friend bool operator==(const QueryCounts&, const QueryCounts&) = default;
};

class OracleSet {
 public:
  OracleSet(OracleSet&&) noexcept;
  OracleSet& operator=(OracleSet&&) noexcept;
  ~OracleSet();

  const Params& params() const { return spec_.params; }
  const Seed& seed() const { return spec_.seed; }
  const WorldSpec& spec() const { return spec_; }

  /// P(x) = (y, A_y w + b_y) where Pi(x) = y || w.
  std::pair<BitVec, BitVec> p(const BitVec& x);
  /// Pi^-1(y || w) when A_y w + b_y = u, else nullopt.
  std::optional<BitVec> p_inv(const BitVec& y, const BitVec& u);
  /// 1 iff j in [l+1] and v^T A_y^{[j:n-r]} = 0.
  bool d(std::size_t j, const BitVec& y, const BitVec& v);
  /// 1 iff u is in the coset A_y Z^{n-r} + b_y.
  bool d0(const BitVec& y, const BitVec& u);
  /// Bloated dual; throws std::logic_error until bloat is sampled.
  bool d_bloated(std::size_t j, const BitVec& y, const BitVec& v);
  /// First r bits of Pi(x). Not an oracle query.
  BitVec h(const BitVec& x) const;

  /// Installs a fresh bloat key drawn from `rng`; per-y Ā_y (or the vector
  /// tuple) is then derived lazily. Requires n - r - l >= s.
  void sample_bloated(Prg& rng, BloatForm form);
  bool has_bloat() const;
  const BloatData& bloat(const BitVec& y) const;

  // Simulator-side access; none of these touch the counters.
  const CosetData& coset(const BitVec& y) const;
  const PermutationEngine& permutation() const;
  BitVec pi_forward(const BitVec& x) const;
  BitVec pi_inverse(const BitVec& z) const;
  bool in_coset(const BitVec& y, const BitVec& u) const;
  /// Predicate form of D(j, y, .), for superposition queries.
  DualPredicate dual_predicate(std::size_t j, const BitVec& y) const;

  /// Logs one logical query (used when a whole superposition query is
  /// evaluated through dual_predicate).
  void record_query(Oracle which, std::uint64_t count = 1);
  QueryCounts counts() const;
  void reset_counts();

 private:
  friend OracleSet build_oracles(const Params& params, const Seed& seed);
  explicit OracleSet(WorldSpec spec);

  struct State;
  WorldSpec spec_;
  std::unique_ptr<State> state_;
};

/// Throws std::invalid_argument for unsupported (n, mode) combinations.
OracleSet build_oracles(const Params& params, const Seed& seed);
inline OracleSet build_oracles(const WorldSpec& w) {
  return build_oracles(w.params, w.seed);
}

}  // namespace osslab

#endif  // OSSLAB_ORACLES_HPP_
