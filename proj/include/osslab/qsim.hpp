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

#ifndef OSSLAB_QSIM_HPP_
#define OSSLAB_QSIM_HPP_

// Dense statevector simulation of key generation and the signing loop.
// Basis index z is the word of a BitVec of length n, so bit 1 of the string
// is the most significant bit of the index.

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "osslab/oracles.hpp"

namespace osslab::qsim {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kNormGuard = 1e-8;

struct StateVector {
  std::size_t n = 0;
  std::vector<Amplitude> amp;

  StateVector() = default;
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t qubits);

  static StateVector basis(std::size_t qubits, std::uint64_t z);
  /// Equal amplitudes phase * |S|^{-1/2} on the given indices.
  static StateVector uniform(std::size_t qubits,
                             const std::vector<std::uint64_t>& support,
                             Amplitude phase = 1.0);

  double norm_sq() const;
  /// Indices with |amp| above `eps`, ascending.
  std::vector<std::uint64_t> support(double eps = 1e-12) const;
};

/// max_z |a_z - b_z|. Throws on a size mismatch.
double max_distance(const StateVector& a, const StateVector& b);

struct DumpEntry {
  std::string index_hex;
  double re;
  double im;
};
/// Nonzero amplitudes (above 1e-12), sorted by index.
std::vector<DumpEntry> dump(const StateVector& s);

/// Measures H on the uniform superposition (short-circuited to a uniform y)
/// and returns the coset state over A_y Z^{n-r} + b_y. Needs an explicit
/// table world with n <= 24. Makes no counted oracle queries.
std::pair<BitVec, StateVector> gen_statevector(const OracleSet& o, Prg& rng);

/// Phase i on every z with z[1:iter] = m[1:iter].
void apply_o1(StateVector& s, std::size_t iter, const BitVec& m);
/// In-place normalized fast Walsh-Hadamard transform.
void walsh_hadamard(StateVector& s);
/// H^n (phase i on {v : D(iter, y, v) = 1}) H^n. Counts as one D query.
void apply_o2(StateVector& s, std::size_t iter, const BitVec& y, OracleSet& o);

/// Standard-basis measurement. Throws std::logic_error if the state is not
/// normalized to within 1e-8.
BitVec measure(const StateVector& s, Prg& rng);

/// The full signing loop followed by measurement. Consumes `sk`.
BitVec sign_statevector(OracleSet& o, const BitVec& pk, StateVector&& sk,
                        const BitVec& m, Prg& rng);

}  // namespace osslab::qsim

#endif  // OSSLAB_QSIM_HPP_
