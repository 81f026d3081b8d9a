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

#ifndef OSSLAB_TESTS_TEST_UTIL_HPP_
#define OSSLAB_TESTS_TEST_UTIL_HPP_

// Brute-force reference computations shared by the unit tests. They work
// directly from the coset data and never go through the code under test.

#include <cstdint>
#include <vector>

#include "osslab/oracles.hpp"
#include "osslab/qsim.hpp"

namespace osslab::testutil {

/// W_{y,m,j} by walking every w in Z_2^{n-r}.
inline std::vector<std::uint64_t> w_set(const CosetData& c, std::size_t n,
                                        std::size_t r, const BitVec& m,
                                        std::size_t j) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (n - r)); ++w) {
    BitVec sigma = gf2::mat_vec(c.a, BitVec(n - r, w)) ^ c.b;
    if (sigma.prefix(j) == m.prefix(j)) out.push_back(sigma.word());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline qsim::StateVector w_state(const CosetData& c, std::size_t n, std::size_t r,
                                 const BitVec& m, std::size_t j,
                                 qsim::Amplitude phase = 1.0) {
  return qsim::StateVector::uniform(n, w_set(c, n, r, m, j), phase);
}

/// ((i - 1) / sqrt 2)^k
inline qsim::Amplitude step_phase(std::size_t k) {
  qsim::Amplitude p = 1.0;
  for (std::size_t i = 0; i < k; ++i) p *= qsim::Amplitude(-1.0, 1.0) / std::sqrt(2.0);
  return p;
}

/// chi^2 statistic of observed counts against a uniform expectation.
inline double chi2_uniform(const std::vector<std::uint64_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double e = total / static_cast<double>(counts.size());
  double chi2 = 0;
  for (auto c : counts) chi2 += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
  return chi2;
}

}  // namespace osslab::testutil

#endif  // OSSLAB_TESTS_TEST_UTIL_HPP_
