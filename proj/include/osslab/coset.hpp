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

#ifndef OSSLAB_COSET_HPP_
#define OSSLAB_COSET_HPP_

// Symbolic backend: every intermediate signing state is a phase times the
// uniform superposition over W_{y,m,j}, the coset elements whose first j
// bits equal the message prefix. No 2^n allocation, so it runs at any n the
// oracle engine supports.

#include <complex>
#include <vector>

#include "osslab/oracles.hpp"
#include "osslab/qsim.hpp"

namespace osslab::coset {

inline constexpr std::size_t kMaxEnumerateBits = 20;

struct CosetState {
  BitVec y;
  BitMatrix a;
  BitVec b;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t l = 0;
  std::size_t matched = 0;
  BitVec m_prefix{0};
  std::complex<double> phase{1.0, 0.0};

  std::size_t support_log2() const { return n - r - matched; }
};

/// Same y draw as qsim::gen_statevector, so equal rng states agree.
std::pair<BitVec, CosetState> gen_symbolic(const OracleSet& o, Prg& rng);

/// One phase-matched Grover step: fixes bit `iter` and multiplies the phase
/// by (i - 1)/sqrt(2). Requires iter = matched + 1 and an agreeing prefix.
CosetState sign_step_symbolic(CosetState st, std::size_t iter, const BitVec& m);

/// All l steps (one logical D query each), then a uniform draw from
/// W_{y,m,l} using the [[I, 0], [B, C]] block structure.
BitVec sign_symbolic(OracleSet& o, const BitVec& pk, CosetState&& st,
                     const BitVec& m, Prg& rng);

/// Uniform element of {A w + b : (A w + b)[1:k] = prefix} for any A, via
/// solve plus a random kernel element. nullopt if the set is empty.
std::optional<BitVec> sample_prefixed_coset(const BitMatrix& a, const BitVec& b,
                                            const BitVec& prefix, Prg& rng);

/// Every element of W_{y,m,matched}, sorted. Needs n - r - matched <= 20.
std::vector<BitVec> enumerate_support(const CosetState& st);

/// Dense form; needs n <= 24.
qsim::StateVector to_statevector(const CosetState& st);

}  // namespace osslab::coset

#endif  // OSSLAB_COSET_HPP_
