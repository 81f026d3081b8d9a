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

#include "osslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "osslab/coset.hpp"
#include "osslab/qsim.hpp"

namespace osslab::experiments {

namespace {

using Clock = std::chrono::steady_clock;

Metric exact_metric(std::string id, double estimate, double expected, std::string source,
                    bool pass) {
  return Metric{std::move(id), estimate, estimate, estimate, expected, std::move(source), pass};
}

ExperimentReport new_report(std::string name, const SuiteOptions& opts, std::uint64_t trials) {
  ExperimentReport rep;
  rep.name = std::move(name);
  rep.seed = seed_to_hex(opts.seed);
  rep.trials = trials;
  return rep;
}

std::uint64_t trials_or(const SuiteOptions& opts, std::uint64_t fallback) {
  return opts.trials == 0 ? fallback : opts.trials;
}

/// W_{y,m,k} as a dense state with the given phase, built without running
/// any signing step.
qsim::StateVector w_state(const OracleSet& o, const BitVec& y, const BitVec& m,
                          std::size_t k, std::complex<double> phase) {
  const CosetData& c = o.coset(y);
  coset::CosetState st;
  st.y = y;
  st.a = c.a;
  st.b = c.b;
  st.n = o.params().n;
  st.r = o.params().r;
  st.l = o.params().l;
  st.matched = k;
  st.m_prefix = m.prefix(k);
  st.phase = phase;
  return coset::to_statevector(st);
}

const std::complex<double> kStep{-M_SQRT1_2, M_SQRT1_2};

struct ToyShape {
  std::size_t n, r, l;
};

ToyShape random_shape(Prg& rng) {
  const std::size_t n = 6 + rng.below(5);
  const std::size_t r = 1 + rng.below(3);
  const std::size_t l = 1 + rng.below(n - r);
  return {n, r, l};
}

// ------------------------------------------------------------------ suites

ExperimentReport suite_correctness(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 100);
  auto rep = new_report("correctness", opts, trials);
  rep.params = {{"n", 8}, {"r", 3}, {"l", 2}};
  for (Backend backend : {Backend::kStatevector, Backend::kSymbolic}) {
    std::uint64_t ok = 0, d_exact = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto o = build_oracles(Params::toy(8, 3, 2), split_seed(opts.seed, t));
      Prg rng = Prg::derive(opts.seed, "correctness", t);
      auto [pk, sk] = gen(o, backend, rng);
      const BitVec m(2, rng.bits(2));
      const Signature sig = sign(o, pk, sk, m, rng);
      d_exact += o.counts().d == 2;
      ok += verify(o, pk, m, sig);
    }
    const std::string tag(to_string(backend));
    rep.metrics.push_back(exact_metric("verify_rate_" + tag, double(ok) / double(trials), 1.0,
                                       "theorem", ok == trials));
    rep.metrics.push_back(exact_metric("d_queries_exact_" + tag, double(d_exact) / double(trials),
                                       1.0, "definition", d_exact == trials));
  }
  return rep;
}

ExperimentReport suite_grover(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 20);
  auto rep = new_report("grover", opts, trials);
  rep.params = {{"n_range", "6..10"}, {"long_run", "n=14 r=4 l=8"}};
  double worst = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Prg rng = Prg::derive(opts.seed, "grover", t);
    const ToyShape s = random_shape(rng);
    auto o = build_oracles(Params::toy(s.n, s.r, s.l), split_seed(opts.seed, t));
    const BitVec y(s.r, rng.bits(s.r)), m(s.l, rng.bits(s.l));
    for (std::size_t iter = 1; iter <= s.l; ++iter) {
      auto psi = w_state(o, y, m, iter - 1, 1.0);
      qsim::apply_o1(psi, iter, m);
      qsim::apply_o2(psi, iter, y, o);
      worst = std::max(worst, qsim::max_distance(psi, w_state(o, y, m, iter, kStep)));
    }
  }
  rep.metrics.push_back({"max_step_error", worst, 0, worst, 0.0, "theorem", worst < 1e-10});

  // Eight iterations compose to the identity phase.
  auto o = build_oracles(Params::toy(14, 4, 8), split_seed(opts.seed, trials));
  Prg rng = Prg::derive(opts.seed, "grover-long");
  auto [y, psi] = qsim::gen_statevector(o, rng);
  const BitVec m(8, rng.bits(8));
  for (std::size_t iter = 1; iter <= 8; ++iter) {
    qsim::apply_o1(psi, iter, m);
    qsim::apply_o2(psi, iter, y, o);
  }
  const auto target = w_state(o, y, m, 8, 1.0);
  std::complex<double> overlap = 0;
  for (std::size_t z = 0; z < psi.amp.size(); ++z) overlap += std::conj(target.amp[z]) * psi.amp[z];
  const double phase_err = std::abs(overlap - 1.0);
  rep.metrics.push_back({"phase_error_after_8", phase_err, 0, phase_err, 0.0, "theorem",
                         phase_err < 1e-9});
  return rep;
}

ExperimentReport suite_backends(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 50);
  auto rep = new_report("backends", opts, trials);
  rep.params = {{"n_range", "6..10"}};
  double worst = 0;
  std::uint64_t comparisons = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Prg shape_rng = Prg::derive(opts.seed, "backends-shape", t);
    const ToyShape s = random_shape(shape_rng);
    auto o = build_oracles(Params::toy(s.n, s.r, s.l), split_seed(opts.seed, t));
    Prg a = Prg::derive(opts.seed, "backends", t), b = Prg::derive(opts.seed, "backends", t);
    auto [y, sv] = qsim::gen_statevector(o, a);
    auto [y2, st] = coset::gen_symbolic(o, b);
    const BitVec m(s.l, shape_rng.bits(s.l));
    worst = std::max(worst, qsim::max_distance(sv, coset::to_statevector(st)));
    for (std::size_t k = 1; k <= s.l; ++k) {
      qsim::apply_o1(sv, k, m);
      qsim::apply_o2(sv, k, y, o);
      st = coset::sign_step_symbolic(std::move(st), k, m);
      worst = std::max(worst, qsim::max_distance(sv, coset::to_statevector(st)));
      ++comparisons;
    }
  }
  rep.metrics.push_back({"max_amplitude_error", worst, 0, worst, 0.0, "computed", worst < 1e-10});
  rep.metrics.push_back(exact_metric("iterations_compared", double(comparisons),
                                     double(comparisons), "definition", comparisons > 0));
  return rep;
}

ExperimentReport suite_census(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 10);
  auto rep = new_report("census", opts, trials);
  rep.params = {{"n", 8}, {"r", 3}, {"l", 2}};
  const std::vector<std::uint64_t> expected{32, 16, 8};
  std::uint64_t mismatches = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto o = build_oracles(Params::toy(8, 3, 2), split_seed(opts.seed, t));
    Prg rng = Prg::derive(opts.seed, "census", t);
    const BitVec y(3, rng.bits(3));
    for (std::uint64_t mw = 0; mw < 4; ++mw)
      mismatches += distlab::w_set_census(o, y, BitVec(2, mw)) != expected;
  }
  rep.metrics.push_back(exact_metric("census_mismatches", double(mismatches), 0.0, "theorem",
                                     mismatches == 0));
  return rep;
}

ExperimentReport suite_distributions(const SuiteOptions& opts) {
  auto rep = new_report("distributions", opts, 1);
  rep.params = {{"dist", "(4,1,1) (5,1,2)"}, {"mdist", "s=1 (4,1,1), s=2 (6,1,1)"}};
  auto a_for = [&](std::size_t n, std::size_t r, std::size_t l) {
    return derive_coset(Params::toy(n, r, l), opts.seed, BitVec(r, 0)).a;
  };
  auto compare = [&](const std::string& id, const distlab::ExactDist& x,
                     const distlab::ExactDist& y) {
    const double tv = distlab::tv_distance(x, y);
    rep.metrics.push_back(exact_metric(id, tv, 0.0, "theorem", x == y));
  };
  for (ToyShape s : {ToyShape{4, 1, 1}, ToyShape{5, 1, 2}}) {
    const auto setup = distlab::make_setup(a_for(s.n, s.r, s.l), s.l);
    const auto e1 = distlab::exact_distribution(*distlab::dist1(setup));
    const auto e2 = distlab::exact_distribution(*distlab::dist2(setup));
    const auto e3 = distlab::exact_distribution(*distlab::dist3(setup));
    const std::string tag = "_n" + std::to_string(s.n) + "_l" + std::to_string(s.l);
    compare("tv_dist1_dist2" + tag, e1, e2);
    compare("tv_dist1_dist3" + tag, e1, e3);
  }
  {
    const auto setup = distlab::make_setup(a_for(4, 1, 1), 1);
    const auto m1 = distlab::exact_distribution(*distlab::mdist1(setup, 1));
    const auto m2 = distlab::exact_distribution(*distlab::mdist2(setup, 1));
    compare("tv_mdist1_mdist2_s1", m1, m2);
    const double expected = std::ldexp(1.0, 3) - std::ldexp(1.0, 1);  // 2^{n-r} - 2^l
    rep.metrics.push_back(exact_metric("support_size_s1", double(m1.size()), expected,
                                       "theorem", double(m1.size()) == expected));
  }
  {
    const auto setup = distlab::make_setup(a_for(6, 1, 1), 1);
    const auto m1 = distlab::exact_distribution(*distlab::mdist1(setup, 2));
    const auto m2 = distlab::exact_distribution(*distlab::mdist2(setup, 2));
    compare("tv_mdist1_mdist2_s2", m1, m2);
  }
  return rep;
}

std::vector<ExperimentReport> suite_distinguisher(const SuiteOptions& opts) {
  Prg rng = Prg::derive(opts.seed, "distinguisher");
  const Seed worlds = split_seed(opts.seed, 0xd157);
  auto hash_only = distlab::sz_distinguisher(6, 2, worlds, distlab::SzCase::kHashOnly,
                                             trials_or(opts, 10000), rng, opts.threads);
  auto first_bit = distlab::sz_distinguisher(6, 2, worlds, distlab::SzCase::kHashAndFirstBit,
                                             trials_or(opts, 100000), rng, opts.threads);
  return {hash_only, first_bit};
}

ExperimentReport suite_collisions(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 5);
  auto rep = new_report("collisions", opts, trials);
  rep.params = {{"n", 8}, {"r", 3}, {"l", 2}};
  std::uint64_t pairs = 0, failures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto o = build_oracles(Params::toy(8, 3, 2), split_seed(opts.seed, t));
    Prg rng = Prg::derive(opts.seed, "collisions", t);
    const PublicKey pk{BitVec(3, rng.bits(3)), o.spec()};
    std::vector<std::pair<BitVec, Signature>> valid;
    for (std::uint64_t s = 0; s < 256; ++s)
      for (std::uint64_t mw = 0; mw < 4; ++mw)
        if (verify(o, pk, BitVec(2, mw), Signature{BitVec(8, s)}))
          valid.push_back({BitVec(2, mw), Signature{BitVec(8, s)}});
    for (std::size_t i = 0; i < valid.size(); ++i)
      for (std::size_t j = i + 1; j < valid.size(); ++j) {
        ++pairs;
        try {
          const auto c = extract_collision(o, pk, valid[i], valid[j]);
          if (c.x0 == c.x1 || o.h(c.x0) != pk.y || o.h(c.x1) != pk.y) ++failures;
        } catch (const std::exception&) {
          ++failures;
        }
      }
  }
  rep.metrics.push_back(exact_metric("collision_failures", double(failures), 0.0, "theorem",
                                     failures == 0));
  const double expected_pairs = double(trials) * 32 * 31 / 2;
  rep.metrics.push_back(exact_metric("pairs_checked", double(pairs), expected_pairs,
                                     "definition", double(pairs) == expected_pairs));
  return rep;
}

ExperimentReport suite_incompressible(const SuiteOptions& opts) {
  const std::uint64_t trials = trials_or(opts, 100);
  auto rep = new_report("incompressible", opts, trials);
  rep.params = {{"n", 10}, {"r", 3}, {"l", 3}};
  std::uint64_t ok = 0, pinv = 0, offset_ok = 0, b_bit = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto o = build_oracles(Params::toy(10, 3, 3, 0, Variant::kIncompressible),
                           split_seed(opts.seed, t));
    Prg rng = Prg::derive(opts.seed, "incompressible", t);
    auto [pk, sk] = gen(o, t % 2 ? Backend::kSymbolic : Backend::kStatevector, rng);
    const BitVec m(2, rng.bits(2));
    const Signature sig = sign_incompressible(o, pk, sk, m, rng);
    ok += verify_incompressible(o, pk, m, sig);
    pinv += o.counts().p_inv;
    const auto& c = o.coset(pk.y);
    b_bit += c.b.get(3);
    const BitVec diff = sig.sigma ^ c.b;
    offset_ok += !diff.is_zero() && gf2::column_span(c.a).contains(diff);
  }
  const double nt = double(trials);
  rep.metrics.push_back(exact_metric("verify_rate", ok / nt, 1.0, "theorem", ok == trials));
  rep.metrics.push_back(exact_metric("p_inv_queries", double(pinv), 0.0, "definition", pinv == 0));
  rep.metrics.push_back(exact_metric("offset_nonzero_in_span", offset_ok / nt, 1.0, "theorem",
                                     offset_ok == trials));
  rep.metrics.push_back(exact_metric("b_bit_l_set", b_bit / nt, 1.0, "definition",
                                     b_bit == trials));
  return rep;
}

ExperimentReport suite_hash_and_sign(const SuiteOptions& opts) {
  auto rep = new_report("hash-and-sign", opts, 4);
  rep.params = {{"n", 14}, {"r", 3}, {"l", 8}, {"lengths", "0,1,1024,1048576"}};
  const Params params = Params::toy(14, 3, 8);
  std::uint64_t ok = 0, index = 0;
  for (std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{1024},
                          std::size_t{1} << 20}) {
    auto o = build_oracles(params, split_seed(opts.seed, index));
    Prg rng = Prg::derive(opts.seed, "hash-and-sign", index++);
    std::vector<std::uint8_t> msg(len);
    for (auto& byte : msg) byte = static_cast<std::uint8_t>(rng.bits(8));
    auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
    ok += hs_verify(o, pk, msg, hs_sign(o, pk, sk, msg, rng));
  }
  rep.metrics.push_back(exact_metric("round_trips", double(ok), 4.0, "theorem", ok == 4));

  auto o = build_oracles(params, split_seed(opts.seed, index));
  std::map<BitVec, std::string> seen;
  std::string m0, m1;
  for (std::uint64_t i = 0; m1.empty(); ++i) {
    std::string msg = "msg-" + std::to_string(i);
    auto [it, fresh] = seen.emplace(rom_hash(o.seed(), msg, 8), msg);
    if (!fresh) {
      m0 = it->second;
      m1 = std::move(msg);
    }
  }
  auto as_bytes = [](const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
  };
  Prg rng = Prg::derive(opts.seed, "hash-and-sign-birthday");
  auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
  const Signature sig = hs_sign(o, pk, sk, as_bytes(m0), rng);
  const bool both = hs_verify(o, pk, as_bytes(m0), sig) && hs_verify(o, pk, as_bytes(m1), sig);
  rep.metrics.push_back(exact_metric("birthday_pair_shares_signature", both ? 1.0 : 0.0, 1.0,
                                     "theorem", both));
  rep.metrics.push_back(exact_metric("birthday_messages_tried", double(seen.size() + 1),
                                     double(seen.size() + 1), "computed", true));
  return rep;
}

ExperimentReport suite_queries(const SuiteOptions& opts) {
  const std::uint64_t reps = trials_or(opts, 20);
  auto rep = new_report("queries", opts, reps);
  rep.params = {{"n", 8}, {"r", 3}, {"l", 2}};
  const WorldSpec world{Params::toy(8, 3, 2), split_seed(opts.seed, 0)};
  for (Backend backend : {Backend::kStatevector, Backend::kSymbolic}) {
    const auto rows = bench(world, backend, {BenchOp::kGen, BenchOp::kSign, BenchOp::kVerify},
                            reps, opts.seed);
    const std::string tag(to_string(backend));
    for (const auto& row : rows) {
      QueryCounts want{};
      if (row.op == BenchOp::kSign) want.d = 2;
      if (row.op == BenchOp::kVerify) want.p_inv = 1;
      const bool pass = row.uniform && row.per_op == want;
      const double observed = row.op == BenchOp::kSign     ? double(row.per_op.d)
                              : row.op == BenchOp::kVerify ? double(row.per_op.p_inv)
                                                           : double(row.per_op.p + row.per_op.p_inv);
      const double expected = row.op == BenchOp::kSign ? 2.0 : row.op == BenchOp::kVerify ? 1.0 : 0.0;
      rep.metrics.push_back(exact_metric(std::string(to_string(row.op)) + "_profile_" + tag,
                                         observed, expected, "theorem", pass));
    }
  }
  return rep;
}

using SuiteFn = std::function<std::vector<ExperimentReport>(const SuiteOptions&)>;

template <typename F>
SuiteFn single(F f) {
  return [f](const SuiteOptions& o) { return std::vector<ExperimentReport>{f(o)}; };
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"correctness", single(suite_correctness)},
      {"grover", single(suite_grover)},
      {"backends", single(suite_backends)},
      {"census", single(suite_census)},
      {"distributions", single(suite_distributions)},
      {"distinguisher", suite_distinguisher},
      {"collisions", single(suite_collisions)},
      {"incompressible", single(suite_incompressible)},
      {"hash-and-sign", single(suite_hash_and_sign)},
      {"queries", single(suite_queries)},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<ExperimentReport> run_suite(std::string_view name, const SuiteOptions& opts) {
  std::vector<ExperimentReport> out;
  for (const auto& [suite, fn] : registry()) {
    if (name != "all" && name != suite) continue;
    auto reports = fn(opts);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  if (out.empty()) throw std::invalid_argument("unknown suite: " + std::string(name));
  return out;
}

std::string_view to_string(BenchOp op) {
  switch (op) {
    case BenchOp::kGen: return "gen";
    case BenchOp::kSign: return "sign";
    case BenchOp::kVerify: return "verify";
  }
  return "?";
}

std::vector<BenchRow> bench(const WorldSpec& world, Backend backend,
                            const std::vector<BenchOp>& ops, std::uint64_t reps,
                            const Seed& seed) {
  if (reps == 0) throw std::invalid_argument("bench: reps must be positive");
  OracleSet o = build_oracles(world);
  std::map<BenchOp, BenchRow> rows;
  std::map<BenchOp, std::optional<QueryCounts>> first;
  auto record = [&](BenchOp op, Clock::duration dt, const QueryCounts& q) {
    auto& row = rows[op];
    row.op = op;
    ++row.reps;
    row.total_ms += std::chrono::duration<double, std::milli>(dt).count();
    if (!first[op]) first[op] = q;
    else if (!(*first[op] == q)) row.uniform = false;
    row.per_op = *first[op];
  };
  for (std::uint64_t i = 0; i < reps; ++i) {
    Prg rng = Prg::derive(seed, "bench", i);
    auto q0 = o.counts();
    auto t0 = Clock::now();
    auto [pk, sk] = gen(o, backend, rng);
    auto t1 = Clock::now();
    auto q1 = o.counts();
    record(BenchOp::kGen, t1 - t0, q1 - q0);
    const BitVec m(world.params.l, rng.bits(world.params.l));
    const Signature sig = sign(o, pk, sk, m, rng);
    auto t2 = Clock::now();
    auto q2 = o.counts();
    record(BenchOp::kSign, t2 - t1, q2 - q1);
    const bool ok = verify(o, pk, m, sig);
    auto t3 = Clock::now();
    record(BenchOp::kVerify, t3 - t2, o.counts() - q2);
    if (!ok) throw std::logic_error("bench: honest signature failed to verify");
  }
  std::vector<BenchRow> out;
  for (BenchOp op : ops) out.push_back(rows.at(op));
  return out;
}

}  // namespace osslab::experiments
