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

// Acceptance gate: runs each experiment suite with its default trial counts,
// re-checks the thresholds here rather than trusting the suite's own verdicts,
// and enforces a wall-clock budget per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "osslab/experiments.hpp"

namespace {

using osslab::distlab::ExperimentReport;
using osslab::distlab::Metric;
namespace ex = osslab::experiments;

struct Check {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

const Metric* find(const ExperimentReport& r, const std::string& id) {
  for (const auto& m : r.metrics)
    if (m.id == id) return &m;
  return nullptr;
}

// Checks metric `id` against `pred` on its estimate.
void metric(Check& c, const ExperimentReport& r, const std::string& id,
            const std::function<bool(const Metric&)>& pred, const std::string& rule) {
  const Metric* m = find(r, id);
  if (!m) {
    c.problems.push_back(r.name + "/" + id + " missing");
    return;
  }
  c.require(pred(*m) && m->pass, r.name + "/" + id + " = " + std::to_string(m->estimate) +
                                     " violates " + rule);
}

auto equals(double v) {
  return [v](const Metric& m) { return m.estimate == v; };
}
auto below(double v) {
  return [v](const Metric& m) { return m.estimate < v; };
}

struct Criterion {
  int id;
  std::string title;
  std::string suite;
  double budget_s;
  std::function<void(Check&, const std::vector<ExperimentReport>&)> verify;
};

std::vector<Criterion> criteria() {
  return {
      {1, "perfect correctness at (8,3,2), both backends", "correctness", 5,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 100, "expected 100 worlds");
         metric(c, r, "verify_rate_statevector", equals(1.0), "== 1");
         metric(c, r, "verify_rate_symbolic", equals(1.0), "== 1");
       }},
      {2, "Grover step identity and 8-step phase", "grover", 30,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 20, "expected 20 worlds");
         metric(c, r, "max_step_error", below(1e-10), "< 1e-10");
         metric(c, r, "phase_error_after_8", below(1e-9), "< 1e-9");
       }},
      {3, "symbolic and statevector backends agree", "backends", 30,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 50, "expected 50 pairs");
         metric(c, r, "max_amplitude_error", below(1e-10), "< 1e-10");
       }},
      {4, "W-set census (32, 16, 8)", "census", 5,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 10, "expected 10 worlds");
         metric(c, r, "census_mismatches", equals(0), "== 0");
       }},
      {5, "exact distribution equivalences", "distributions", 60,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         for (const char* id : {"tv_dist1_dist2_n4_l1", "tv_dist1_dist3_n4_l1",
                                "tv_dist1_dist2_n5_l2", "tv_dist1_dist3_n5_l2",
                                "tv_mdist1_mdist2_s1", "tv_mdist1_mdist2_s2"})
           metric(c, r, id, equals(0), "exact equality");
         metric(c, r, "support_size_s1", equals(6), "== 2^{n-r} - 2^l = 6");
       }},
      {6, "collapsing distinguisher at (6,2)", "distinguisher", 120,
       [](Check& c, const auto& reps) {
         c.require(reps.size() == 2, "expected two reports");
         if (reps.size() != 2) return;
         const auto& h = reps[0];
         const auto& f = reps[1];
         c.require(h.trials == 10000, "hash-only needs 1e4 trials");
         c.require(f.trials == 100000, "first-bit needs 1e5 trials");
         metric(c, h, "accept_hash_only", equals(1.0), "== 1");
         metric(c, f, "accept_hash_only", equals(1.0), "== 1");
         const double expected = 0.5 + (64.0 - 16.0) / (2.0 * 16.0 * 63.0);
         metric(c, f, "accept_first_bit",
                [expected](const Metric& m) {
                  return std::abs(m.expected - expected) < 1e-12 && m.ci_low <= expected &&
                         expected <= m.ci_high && m.ci_high - m.estimate > 0;
                },
                "within 3 sigma of 0.523810");
         metric(c, f, "advantage_lower_99",
                [](const Metric& m) { return m.estimate >= 0.25; }, ">= 1/4");
       }},
      {7, "collision extraction, exhaustive at n=8", "collisions", 10,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 5, "expected 5 worlds");
         metric(c, r, "collision_failures", equals(0), "== 0");
         metric(c, r, "pairs_checked", equals(5 * 32 * 31 / 2), "every pair");
       }},
      {8, "incompressible variant", "incompressible", 5,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         c.require(r.trials == 100, "expected 100 runs");
         metric(c, r, "verify_rate", equals(1.0), "== 1");
         metric(c, r, "p_inv_queries", equals(0), "== 0");
         metric(c, r, "offset_nonzero_in_span", equals(1.0), "== 1");
         metric(c, r, "b_bit_l_set", equals(1.0), "== 1");
       }},
      {9, "hash-and-sign round trips and birthday pair", "hash-and-sign", 30,
       [](Check& c, const auto& reps) {
         const auto& r = reps.at(0);
         metric(c, r, "round_trips", equals(4), "all four lengths");
         metric(c, r, "birthday_pair_shares_signature", equals(1.0), "== 1");
       }},
      {10, "query profiles", "queries", 5,
       [](Check& c, const auto& reps) {
         for (const char* b : {"statevector", "symbolic"}) {
           const std::string tag(b);
           metric(c, reps.at(0), "sign_profile_" + tag, equals(2), "{D: l}");
           metric(c, reps.at(0), "verify_profile_" + tag, equals(1), "{Pinv: 1}");
         }
         // Direct check on bench output at a second shape.
         const osslab::WorldSpec w{osslab::Params::toy(12, 3, 5), osslab::seed_from_u64(10)};
         const auto rows =
             ex::bench(w, osslab::Backend::kSymbolic,
                       {ex::BenchOp::kGen, ex::BenchOp::kSign, ex::BenchOp::kVerify}, 10,
                       osslab::seed_from_u64(11));
         osslab::QueryCounts sign_q{}, verify_q{};
         sign_q.d = 5;
         verify_q.p_inv = 1;
         c.require(rows.at(0).per_op == osslab::QueryCounts{}, "gen made queries");
         c.require(rows.at(1).per_op == sign_q && rows.at(1).uniform, "sign profile != {D: 5}");
         c.require(rows.at(2).per_op == verify_q && rows.at(2).uniform,
                   "verify profile != {Pinv: 1}");
       }},
  };
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& crit : criteria()) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ExperimentReport> reports;
    try {
      reports = ex::run_suite(crit.suite, ex::SuiteOptions{});
      for (const auto& r : reports)
        check.require(r.pass(), "suite report " + r.name + " did not pass");
      crit.verify(check, reports);
    } catch (const std::exception& e) {
      check.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.require(secs < crit.budget_s,
                  "runtime " + std::to_string(secs) + " s exceeds " +
                      std::to_string(crit.budget_s) + " s");
    const bool ok = check.problems.empty();
    failures += !ok;
    std::printf("%s  criterion %2d  %-48s %8.3f s (budget %g s)\n", ok ? "PASS" : "FAIL",
                crit.id, crit.title.c_str(), secs, crit.budget_s);
    for (const auto& p : check.problems) std::printf("      %s\n", p.c_str());
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
