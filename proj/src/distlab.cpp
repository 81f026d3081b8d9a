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

#include "osslab/distlab.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "osslab/qsim.hpp"

namespace osslab::distlab {

namespace {

std::uint64_t pow2(std::size_t k) {
  if (k >= 64) throw std::overflow_error("2^k does not fit in 64 bits");
  return std::uint64_t{1} << k;
}

/// Row-major fill of a rows x cols matrix from the low bits of `word`.
BitMatrix matrix_from_word(std::size_t rows, std::size_t cols, std::uint64_t word) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 1; i <= rows; ++i)
    for (std::size_t j = 1; j <= cols; ++j) {
      m.set(i, j, word & 1);
      word >>= 1;
    }
  return m;
}

/// {w : w^T M in {0, t}}: the left null space of M, plus one solution of
/// w^T M = t when t is reachable.
Subspace affine_superspace(const BitMatrix& m, const BitVec& t) {
  Subspace base = gf2::left_null_space(m);
  if (t.is_zero()) return base;
  auto w0 = gf2::solve(m.transpose(), t);
  if (!w0) throw std::logic_error("superspace target outside the row space");
  return base.with(*w0);
}

std::uint64_t gl_order(std::size_t k) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= pow2(k) - pow2(i);
  return total;
}

class Dist1 : public Sampler {
 public:
  explicit Dist1(const ChainSetup& s) : s_(s) {}
  std::string name() const override { return "dist1"; }
  std::uint64_t domain_size() const override {
    return pow2(s_.n) - pow2(s_.r + s_.l);
  }
  std::uint64_t enumeration_cost() const override { return pow2(s_.n); }
  void enumerate(const std::function<void(const SubspaceTuple&)>& visit) const override {
    for (std::uint64_t v = 0; v < pow2(s_.n); ++v) {
      BitVec vv(s_.n, v);
      if (!s_.s_chain.back().contains(vv)) visit(build(vv));
    }
  }
  SubspaceTuple sample(Prg& rng) const override {
    for (;;) {
      BitVec v = gf2::random_vec(rng, s_.n);
      if (!s_.s_chain.back().contains(v)) return build(v);
    }
  }

 protected:
  virtual SubspaceTuple build(const BitVec& v) const {
    SubspaceTuple t;
    for (const auto& sj : s_.s_chain) t.push_back(sj.with(v));
    return t;
  }
  const ChainSetup& s_;
};

class Dist2 : public Dist1 {
 public:
  using Dist1::Dist1;
  std::string name() const override { return "dist2"; }

 protected:
  SubspaceTuple build(const BitVec& v) const override {
    const std::size_t width = s_.n - s_.r;
    const BitVec y = gf2::vec_mat(v, s_.a);
    SubspaceTuple t;
    for (std::size_t j = 1; j <= s_.l + 1; ++j)
      t.push_back(affine_superspace(col_slice(s_.a, j, width), y.slice(j, width)));
    return t;
  }
};

class Dist3 : public Sampler {
 public:
  explicit Dist3(const ChainSetup& s) : s_(s), k_(s.n - s.r - s.l) {}
  std::string name() const override { return "dist3"; }
  std::uint64_t domain_size() const override {
    return pow2(k_ * s_.l) * (pow2(k_) - 1);
  }
  void enumerate(const std::function<void(const SubspaceTuple&)>& visit) const override {
    for (std::uint64_t bw = 0; bw < pow2(k_ * s_.l); ++bw) {
      const BitMatrix c = twist(matrix_from_word(k_, s_.l, bw));
      for (std::uint64_t z = 1; z < pow2(k_); ++z) visit(build(c, z));
    }
  }
  SubspaceTuple sample(Prg& rng) const override {
    const BitMatrix c = twist(gf2::random_matrix(rng, k_, s_.l));
    std::uint64_t z = 0;
    while (z == 0) z = rng.bits(k_);
    return build(c, z);
  }

 private:
  BitMatrix twist(const BitMatrix& b) const {
    return gf2::mat_mul(s_.a, BitMatrix::block(BitMatrix::identity(s_.l),
                                               BitMatrix(s_.l, k_), b,
                                               BitMatrix::identity(k_)));
  }
  SubspaceTuple build(const BitMatrix& c, std::uint64_t z) const {
    const std::size_t width = s_.n - s_.r;
    SubspaceTuple t;
    for (std::size_t j = 1; j <= s_.l + 1; ++j)
      t.push_back(affine_superspace(col_slice(c, j, width), BitVec(width - j + 1, z)));
    return t;
  }
  const ChainSetup& s_;
  std::size_t k_;
};

class MDist1 : public Sampler {
 public:
  MDist1(const ChainSetup& s, std::size_t count) : s_(s), count_(count) {}
  std::string name() const override { return "mdist1"; }
  std::uint64_t domain_size() const override {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < count_; ++k) total *= pow2(s_.n) - pow2(s_.r + s_.l + k);
    return total;
  }
  std::uint64_t enumeration_cost() const override { return pow2(s_.n * count_); }
  void enumerate(const std::function<void(const SubspaceTuple&)>& visit) const override {
    std::vector<BitVec> vs;
    recurse(vs, s_.s_chain.back(), visit);
  }
  SubspaceTuple sample(Prg& rng) const override {
    return sample_bloat_vector_form(s_.a, s_.l, count_, rng).accept;
  }

 private:
  void recurse(std::vector<BitVec>& vs, const Subspace& avoid,
               const std::function<void(const SubspaceTuple&)>& visit) const {
    if (vs.size() == count_) {
      visit(bloat_with_vectors(s_.a, s_.l, vs));
      return;
    }
    for (std::uint64_t v = 0; v < pow2(s_.n); ++v) {
      BitVec vv(s_.n, v);
      if (avoid.contains(vv)) continue;
      vs.push_back(vv);
      recurse(vs, avoid.with(vv), visit);
      vs.pop_back();
    }
  }
  const ChainSetup& s_;
  std::size_t count_;
};

class MDist2 : public Sampler {
 public:
  MDist2(const ChainSetup& s, std::size_t count)
      : s_(s), count_(count), k_(s.n - s.r - s.l) {}
  std::string name() const override { return "mdist2"; }
  std::uint64_t domain_size() const override {
    return gl_order(k_) * pow2(k_ * s_.l);
  }
  std::uint64_t enumeration_cost() const override {
    return pow2(k_ * k_ + k_ * s_.l);
  }
  void enumerate(const std::function<void(const SubspaceTuple&)>& visit) const override {
    for (std::uint64_t mw = 0; mw < pow2(k_ * k_); ++mw) {
      const BitMatrix m = matrix_from_word(k_, k_, mw);
      if (gf2::rank(m) != k_) continue;
      for (std::uint64_t pw = 0; pw < pow2(k_ * s_.l); ++pw) {
        const BitMatrix a_bar =
            bloat_matrix(s_.a, s_.l, m, matrix_from_word(k_, s_.l, pw));
        visit(bloated_chain(a_bar, s_.l, count_));
      }
    }
  }
  SubspaceTuple sample(Prg& rng) const override {
    return sample_bloat_matrix_form(s_.a, s_.l, count_, rng).accept;
  }

 private:
  const ChainSetup& s_;
  std::size_t count_;
  std::size_t k_;
};

void check_bloat(const ChainSetup& setup, std::size_t s) {
  if (s > setup.n - setup.r - setup.l)
    throw std::invalid_argument("bloat count s exceeds n - r - l");
}

}  // namespace

ChainSetup make_setup(const BitMatrix& a, std::size_t l) {
  const std::size_t n = a.rows();
  if (a.cols() > n) throw std::invalid_argument("setup: A has more columns than rows");
  const std::size_t r = n - a.cols();
  if (r < 1 || l < 1 || r + l + 1 > n)
    throw std::invalid_argument("setup: need r, l >= 1 and r + l + 1 <= n");
  if (gf2::rank(a) != a.cols())
    throw std::invalid_argument("setup: A must have full column rank");
  return ChainSetup{a, n, r, l, dual_chain(a, l)};
}

std::unique_ptr<Sampler> dist1(const ChainSetup& setup) {
  return std::make_unique<Dist1>(setup);
}
std::unique_ptr<Sampler> dist2(const ChainSetup& setup) {
  return std::make_unique<Dist2>(setup);
}
std::unique_ptr<Sampler> dist3(const ChainSetup& setup) {
  return std::make_unique<Dist3>(setup);
}
std::unique_ptr<Sampler> mdist1(const ChainSetup& setup, std::size_t s) {
  check_bloat(setup, s);
  return std::make_unique<MDist1>(setup, s);
}
std::unique_ptr<Sampler> mdist2(const ChainSetup& setup, std::size_t s) {
  check_bloat(setup, s);
  return std::make_unique<MDist2>(setup, s);
}

ExactDist exact_distribution(const Sampler& sampler) {
  if (sampler.enumeration_cost() > kMaxDomain)
    throw std::invalid_argument(sampler.name() + ": randomness domain exceeds 2^24");
  std::map<SubspaceTuple, std::int64_t> counts;
  std::int64_t total = 0;
  sampler.enumerate([&](const SubspaceTuple& t) {
    ++counts[t];
    ++total;
  });
  if (static_cast<std::uint64_t>(total) != sampler.domain_size())
    throw std::logic_error(sampler.name() + ": enumeration disagrees with domain size");
  ExactDist out;
  for (auto& [k, c] : counts) out.emplace(k, Rational(c, total));
  return out;
}

EmpiricalDist empirical_distribution(const Sampler& sampler, Prg& rng,
                                     std::uint64_t trials) {
  EmpiricalDist d;
  for (std::uint64_t t = 0; t < trials; ++t) d.add(sampler.sample(rng));
  return d;
}

namespace {

template <typename F, typename G>
double tv_generic(const std::vector<SubspaceTuple>& keys, F pa, G pb) {
  double sum = 0;
  for (const auto& k : keys) sum += std::abs(pa(k) - pb(k));
  return 0.5 * sum;
}

template <typename MA, typename MB>
std::vector<SubspaceTuple> union_keys(const MA& a, const MB& b) {
  std::vector<SubspaceTuple> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : b)
    if (!a.count(k)) keys.push_back(k);
  return keys;
}

double freq(const EmpiricalDist& d, const SubspaceTuple& k) {
  auto it = d.counts.find(k);
  return it == d.counts.end() || d.total == 0
             ? 0.0
             : static_cast<double>(it->second) / static_cast<double>(d.total);
}

double prob(const ExactDist& d, const SubspaceTuple& k) {
  auto it = d.find(k);
  return it == d.end() ? 0.0 : boost::rational_cast<double>(it->second);
}

}  // namespace

double tv_distance(const ExactDist& a, const ExactDist& b) {
  Rational sum = 0;
  for (const auto& k : union_keys(a, b)) {
    auto ia = a.find(k), ib = b.find(k);
    Rational d = (ia == a.end() ? Rational(0) : ia->second) -
                 (ib == b.end() ? Rational(0) : ib->second);
    sum += d < 0 ? -d : d;
  }
  return boost::rational_cast<double>(sum / 2);
}

double tv_distance(const EmpiricalDist& a, const EmpiricalDist& b) {
  return tv_generic(union_keys(a.counts, b.counts),
                    [&](const SubspaceTuple& k) { return freq(a, k); },
                    [&](const SubspaceTuple& k) { return freq(b, k); });
}

double tv_distance(const EmpiricalDist& a, const ExactDist& b) {
  return tv_generic(union_keys(a.counts, b),
                    [&](const SubspaceTuple& k) { return freq(a, k); },
                    [&](const SubspaceTuple& k) { return prob(b, k); });
}

bool tuple_well_formed(const SubspaceTuple& t, std::size_t base_dim) {
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j].dim() != base_dim + j) return false;
    if (j > 0 && !t[j].contains(t[j - 1])) return false;
  }
  return true;
}

// ------------------------------------------------------------- reports

bool ExperimentReport::pass() const {
  for (const auto& m : metrics)
    if (!m.pass) return false;
  return true;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["v"] = 1;
  j["name"] = name;
  j["params"] = params;
  j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : metrics)
    j["metrics"].push_back({{"id", m.id},
                            {"estimate", m.estimate},
                            {"ci_low", m.ci_low},
                            {"ci_high", m.ci_high},
                            {"expected", m.expected},
                            {"source", m.source},
                            {"pass", m.pass}});
  j["seed"] = seed;
  j["trials"] = trials;
  j["pass"] = pass();
  return j;
}

std::string ExperimentReport::to_table() const {
  std::ostringstream os;
  os << name << "  " << params.dump() << "  trials=" << trials << "\n";
  os << std::left << std::setw(34) << "  metric" << std::setw(14) << "estimate"
     << std::setw(28) << "interval" << std::setw(14) << "expected"
     << std::setw(12) << "source" << "verdict\n";
  for (const auto& m : metrics) {
    std::ostringstream ci;
    ci << std::setprecision(6) << "[" << m.ci_low << ", " << m.ci_high << "]";
    os << "  " << std::left << std::setw(32) << m.id << std::setw(14)
       << std::setprecision(7) << m.estimate << std::setw(28) << ci.str()
       << std::setw(14) << m.expected << std::setw(12) << m.source
       << (m.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

// ------------------------------------------------ collapsing distinguisher

std::string_view to_string(SzCase c) {
  return c == SzCase::kHashOnly ? "hash-only" : "hash-and-first-bit";
}

SzCase sz_case_from_string(std::string_view s) {
  if (s == "hash-only") return SzCase::kHashOnly;
  if (s == "hash-and-first-bit") return SzCase::kHashAndFirstBit;
  throw std::invalid_argument("unknown distinguisher case: " + std::string(s));
}

SzCensus sz_census(const OracleSet& o, const BitVec& y) {
  const Params& p = o.params();
  const std::size_t width = p.n - p.r;
  if (width > 16) throw std::invalid_argument("sz_census: n - r > 16");
  SzCensus c;
  for (std::uint64_t w = 0; w < pow2(width); ++w) {
    const BitVec x = o.pi_inverse(y.concat(BitVec(width, w)));
    (x.get(1) ? c.s1 : c.s0) += 1;
  }
  return c;
}

Rational sz_acceptance(const SzCensus& c, std::size_t n, std::size_t r, SzCase which) {
  const auto size = static_cast<std::int64_t>(pow2(n - r));
  const auto s0 = static_cast<std::int64_t>(c.s0), s1 = static_cast<std::int64_t>(c.s1);
  // A coset subset state over S accepts with probability |S| / 2^{n-r}.
  if (which == SzCase::kHashOnly) return Rational(s0 + s1, size);
  return Rational(s0 * s0 + s1 * s1, size * size);
}

double sz_acceptance_simulated(const OracleSet& o, const BitVec& y, SzCase which) {
  const Params& p = o.params();
  const std::size_t width = p.n - p.r;
  const CosetData& c = o.coset(y);
  std::vector<std::uint64_t> part[2];
  for (std::uint64_t w = 0; w < pow2(width); ++w) {
    const BitVec wv(width, w);
    const bool first = o.pi_inverse(y.concat(wv)).get(1);
    const std::uint64_t u = (gf2::mat_vec(c.a, wv) ^ c.b).word();
    part[which == SzCase::kHashOnly ? 0 : first].push_back(u);
  }
  const DualPredicate dual = o.dual_predicate(1, y);
  double total = 0;
  for (const auto& support : part) {
    if (support.empty()) continue;
    const double weight = static_cast<double>(support.size()) / static_cast<double>(pow2(width));
    auto s = qsim::StateVector::uniform(p.n, support);
    qsim::walsh_hadamard(s);
    double accept = 0;
    for (std::uint64_t v = 0; v < s.amp.size(); ++v)
      if (dual.accepts(v)) accept += std::norm(s.amp[v]);
    total += weight * accept;
  }
  return total;
}

double sz_expected_first_bit(std::size_t n, std::size_t r) {
  const double two_n = std::ldexp(1.0, static_cast<int>(n));
  const double two_nr = std::ldexp(1.0, static_cast<int>(n - r));
  return 0.5 + (two_n - two_nr) / (2.0 * two_nr * (two_n - 1.0));
}

namespace {

struct SzPartial {
  std::uint64_t trials = 0;
  std::uint64_t hash_only_exact = 0;
  unsigned __int128 fb_sum = 0;     // sum of s0^2 + s1^2
  unsigned __int128 fb_sum_sq = 0;  // sum of (s0^2 + s1^2)^2
};

}  // namespace

ExperimentReport sz_distinguisher(std::size_t n, std::size_t r, const Seed& seed,
                                  SzCase which, std::uint64_t trials, Prg& rng,
                                  unsigned threads) {
  if (r < 1 || r >= n || n - r > 16 || n > kMaxTableBits)
    throw std::invalid_argument("distinguisher: need 1 <= r < n, n - r <= 16, n <= 24");
  if (trials < 2) throw std::invalid_argument("distinguisher: need at least 2 trials");
  Seed y_key{};
  for (auto& byte : y_key) byte = static_cast<std::uint8_t>(rng.bits(8));
  const Params params = Params::toy(n, r, 0, 0, Variant::kOriginal, PermMode::kExplicitTable);

  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    SzPartial part;
    for (std::uint64_t t = begin; t < end; ++t) {
      const OracleSet o = build_oracles(params, split_seed(seed, t));
      Prg yr = Prg::derive(y_key, "sz-y", t);
      const BitVec y(r, yr.bits(r));
      const SzCensus c = sz_census(o, y);
      ++part.trials;
      if (sz_acceptance(c, n, r, SzCase::kHashOnly) == Rational(1)) ++part.hash_only_exact;
      const unsigned __int128 num = c.s0 * c.s0 + c.s1 * c.s1;
      part.fb_sum += num;
      part.fb_sum_sq += num * num;
    }
    return part;
  };

  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  std::vector<SzPartial> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) {
    const std::uint64_t begin = trials * k / threads, end = trials * (k + 1) / threads;
    pool.emplace_back([&, k, begin, end] { parts[k] = run(begin, end); });
  }
  for (auto& th : pool) th.join();
  SzPartial total;
  for (const auto& p : parts) {
    total.trials += p.trials;
    total.hash_only_exact += p.hash_only_exact;
    total.fb_sum += p.fb_sum;
    total.fb_sum_sq += p.fb_sum_sq;
  }

  ExperimentReport rep;
  rep.name = "distinguisher";
  rep.params = {{"n", n}, {"r", r}, {"case", std::string(to_string(which))}};
  rep.seed = seed_to_hex(seed);
  rep.trials = trials;

  const double nt = static_cast<double>(trials);
  const double hash_only = static_cast<double>(total.hash_only_exact) / nt;
  rep.metrics.push_back({"accept_hash_only", hash_only, hash_only, hash_only, 1.0,
                         "theorem", total.hash_only_exact == trials});
  if (which == SzCase::kHashAndFirstBit) {
    const double denom = std::ldexp(1.0, static_cast<int>(2 * (n - r)));
    const double mean = static_cast<double>(total.fb_sum) / nt / denom;
    const double mean_sq = static_cast<double>(total.fb_sum_sq) / nt / (denom * denom);
    const double var = std::max(0.0, (mean_sq - mean * mean) * nt / (nt - 1));
    const double se = std::sqrt(var / nt);
    const double expected = sz_expected_first_bit(n, r);
    rep.metrics.push_back({"accept_first_bit", mean, mean - 3 * se, mean + 3 * se,
                           expected, "theorem", std::abs(mean - expected) <= 3 * se});
    // Hash-only acceptance is exactly 1 per world, so the advantage has the
    // same spread as the first-bit acceptance.
    const double adv = hash_only - mean;
    const double z99 = 2.326;
    rep.metrics.push_back({"advantage_lower_99", adv, adv - z99 * se, adv + z99 * se,
                           0.25, "theorem", adv - z99 * se >= 0.25});
  }
  return rep;
}

// ----------------------------------------------------------- W-set census

std::vector<std::uint64_t> w_set_census(const OracleSet& o, const BitVec& y,
                                        const BitVec& m) {
  const Params& p = o.params();
  if (p.n - p.r > 20) throw std::invalid_argument("w_set_census: n - r > 20");
  if (m.size() != p.l) throw std::invalid_argument("w_set_census: message length != l");
  const CosetData& c = o.coset(y);
  std::vector<std::uint64_t> counts(p.l + 1, 0);
  for (std::uint64_t w = 0; w < pow2(p.n - p.r); ++w) {
    const BitVec sigma = gf2::mat_vec(c.a, BitVec(p.n - p.r, w)) ^ c.b;
    for (std::size_t j = 0; j <= p.l; ++j) {
      if (j > 0 && sigma.get(j) != m.get(j)) break;
      ++counts[j];
    }
  }
  return counts;
}

unsigned default_threads() {
  if (const char* env = std::getenv("OSSLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace osslab::distlab
