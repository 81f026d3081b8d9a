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

#ifndef OSSLAB_EXPERIMENTS_HPP_
#define OSSLAB_EXPERIMENTS_HPP_

// Named experiment suites (correctness, Grover step, backend agreement,
// W-set census, distributions, distinguisher, collisions, incompressible,
// hash-and-sign, query profiles) and the per-operation benchmark.

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "osslab/distlab.hpp"
#include "osslab/scheme.hpp"

namespace osslab::experiments {

using distlab::ExperimentReport;
using distlab::Metric;

struct SuiteOptions {
  /// 0 selects the suite's default trial count.
  std::uint64_t trials = 0;
  Seed seed = seed_from_u64(0);
  unsigned threads = 0;
};

/// Every suite name accepted by run_suite, in run order (without "all").
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument
/// for an unknown name.
std::vector<ExperimentReport> run_suite(std::string_view name, const SuiteOptions& opts);

enum class BenchOp { kGen, kSign, kVerify };
std::string_view to_string(BenchOp op);

struct BenchRow {
  BenchOp op;
  std::uint64_t reps = 0;
  double total_ms = 0;
  /// Oracle queries per single operation (totals divided by reps; exact
  /// because each repetition makes the same number of queries).
  QueryCounts per_op;
  bool uniform = true;  // every repetition made the same queries
};

/// Times gen, sign and verify on fresh keys in the given world. Each rep
/// gets its own key; sign and verify rows count only their own queries.
std::vector<BenchRow> bench(const WorldSpec& world, Backend backend,
                            const std::vector<BenchOp>& ops, std::uint64_t reps,
                            const Seed& seed);

}  // namespace osslab::experiments

#endif  // OSSLAB_EXPERIMENTS_HPP_
