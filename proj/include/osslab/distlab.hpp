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

#ifndef OSSLAB_DISTLAB_HPP_
#define OSSLAB_DISTLAB_HPP_

// Samplers for the superspace distributions, exact enumeration of their
// output distributions, statistical comparison, the collapsing
// distinguisher experiment and experiment reports.

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "osslab/oracles.hpp"

namespace osslab::distlab {

/// (T_1, ..., T_{l+1}); Subspace is already canonical, so equal tuples of
/// subspaces compare equal.
using SubspaceTuple = std::vector<Subspace>;
using Rational = boost::rational<std::int64_t>;
using ExactDist = std::map<SubspaceTuple, Rational>;

struct EmpiricalDist {
  std::map<SubspaceTuple, std::uint64_t> counts;
  std::uint64_t total = 0;
  void add(const SubspaceTuple& t) {
    ++counts[t];
    ++total;
  }
};

inline constexpr std::uint64_t kMaxDomain = std::uint64_t{1} << 24;

/// The fixed matrix A (n x (n - r), full column rank) and its dual chain
/// S_j = ColSpan(A^{[j:n-r]})^perp, j = 1..l+1.
struct ChainSetup {
  BitMatrix a;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t l = 0;
  std::vector<Subspace> s_chain;
};

/// Throws std::invalid_argument unless A has full column rank and
/// r + l + 1 <= n.
ChainSetup make_setup(const BitMatrix& a, std::size_t l);

/// A sampler whose randomness domain can be walked exhaustively.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  /// Number of points in the (post-rejection) randomness domain.
  virtual std::uint64_t domain_size() const = 0;
  /// Upper bound on candidate points visited by enumerate().
  virtual std::uint64_t enumeration_cost() const { return domain_size(); }
  /// Calls `visit` once per domain point, each weighted equally.
  virtual void enumerate(const std::function<void(const SubspaceTuple&)>& visit) const = 0;
  virtual SubspaceTuple sample(Prg& rng) const = 0;
};

/// v outside S_{l+1}; T_j = span(S_j, v).
std::unique_ptr<Sampler> dist1(const ChainSetup& setup);
/// v outside S_{l+1}, y = v^T A; T_j = {w : w^T A^{[j:]} in {0, y[j:]}}.
std::unique_ptr<Sampler> dist2(const ChainSetup& setup);
/// B uniform, z != 0, C = A [[I, 0], [B, I]];
/// T_j = {w : w^T C^{[j:]} in {0, 0^{l-j+1} || z}}.
std::unique_ptr<Sampler> dist3(const ChainSetup& setup);
/// s independent vectors whose span meets S_{l+1} only in 0;
/// T_j = span(S_j, v_1..v_s).
std::unique_ptr<Sampler> mdist1(const ChainSetup& setup, std::size_t s);
/// M full rank, M' uniform, Ā = A [[I, 0], [M', M]];
/// T_j = ColSpan([Ā^{[j:l]} Ā^{[l+s+1:n-r]}])^perp.
std::unique_ptr<Sampler> mdist2(const ChainSetup& setup, std::size_t s);

/// Exact output distribution. Throws if enumeration would exceed 2^24 points.
ExactDist exact_distribution(const Sampler& sampler);
EmpiricalDist empirical_distribution(const Sampler& sampler, Prg& rng,
                                     std::uint64_t trials);

double tv_distance(const ExactDist& a, const ExactDist& b);
double tv_distance(const EmpiricalDist& a, const EmpiricalDist& b);
double tv_distance(const EmpiricalDist& a, const ExactDist& b);

/// Chain inclusion T_1 <= ... <= T_{l+1} and dim T_j = base + j - 1.
bool tuple_well_formed(const SubspaceTuple& t, std::size_t base_dim);

// ------------------------------------------------------------- reports

struct Metric {
  std::string id;
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  double expected = 0;
  /// Where the expectation comes from: "theorem", "computed" or "definition".
  std::string source;
  bool pass = false;
};

struct ExperimentReport {
  std::string name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<Metric> metrics;
  std::string seed;
  std::uint64_t trials = 0;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};

// ------------------------------------------------ collapsing distinguisher

enum class SzCase { kHashOnly, kHashAndFirstBit };
std::string_view to_string(SzCase c);
SzCase sz_case_from_string(std::string_view s);

/// Preimage census for one (world, y): |S_{y,0}| and |S_{y,1}|, the
/// preimages of y under H split by their first bit.
struct SzCensus {
  std::uint64_t s0 = 0;
  std::uint64_t s1 = 0;
};
SzCensus sz_census(const OracleSet& o, const BitVec& y);

/// Exact acceptance probability of the distinguisher for one (world, y),
/// from the census alone: 1 for HashOnly, (s0^2 + s1^2) / 2^{2(n-r)} after
/// first-bit measurement.
Rational sz_acceptance(const SzCensus& c, std::size_t n, std::size_t r, SzCase which);

/// The same quantity by statevector simulation (Hadamard on the coset state,
/// then the dual test), for cross-checking at n <= 10.
double sz_acceptance_simulated(const OracleSet& o, const BitVec& y, SzCase which);

/// 1/2 + 2^{-(n-r+1)} (2^n - 2^{n-r}) / (2^n - 1).
double sz_expected_first_bit(std::size_t n, std::size_t r);

/// Monte Carlo over independent worlds of the unstructured construction.
/// World t uses split_seed(seed, t); y per world comes from a key drawn
/// once from `rng`. Runs on up to `threads` workers (0 = OSSLAB_THREADS or
/// hardware concurrency); results do not depend on the thread count.
ExperimentReport sz_distinguisher(std::size_t n, std::size_t r, const Seed& seed,
                                  SzCase which, std::uint64_t trials, Prg& rng,
                                  unsigned threads = 0);

// ----------------------------------------------------------- W-set census

/// |W_{y,m,j}| for j = 0..l by brute force over all w in Z_2^{n-r}.
/// Needs n - r <= 20.
std::vector<std::uint64_t> w_set_census(const OracleSet& o, const BitVec& y,
                                        const BitVec& m);

/// Worker count: OSSLAB_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned default_threads();

}  // namespace osslab::distlab

#endif  // OSSLAB_DISTLAB_HPP_
