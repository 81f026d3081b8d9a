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

#include "osslab/qsim.hpp"

#include <cmath>
#include <stdexcept>

namespace osslab::qsim {

namespace {

constexpr Amplitude kI{0.0, 1.0};

void check_qubits(std::size_t n) {
  if (n > kMaxQubits)
    throw std::invalid_argument("statevector: n = " + std::to_string(n) +
                                " exceeds the 24-qubit limit");
}

}  // namespace

StateVector::StateVector(std::size_t qubits) : n(qubits) {
  check_qubits(qubits);
  amp.assign(std::size_t{1} << qubits, 0.0);
  amp[0] = 1.0;
}

StateVector StateVector::basis(std::size_t qubits, std::uint64_t z) {
  StateVector s(qubits);
  if (z >= s.amp.size()) throw std::out_of_range("basis: index too large");
  s.amp[0] = 0.0;
  s.amp[z] = 1.0;
  return s;
}

StateVector StateVector::uniform(std::size_t qubits,
                                 const std::vector<std::uint64_t>& support,
                                 Amplitude phase) {
  if (support.empty()) throw std::invalid_argument("uniform: empty support");
  StateVector s(qubits);
  s.amp[0] = 0.0;
  const Amplitude a = phase / std::sqrt(static_cast<double>(support.size()));
  for (auto z : support) s.amp.at(z) = a;
  return s;
}

double StateVector::norm_sq() const {
  double t = 0;
  for (const auto& a : amp) t += std::norm(a);
  return t;
}

std::vector<std::uint64_t> StateVector::support(double eps) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t z = 0; z < amp.size(); ++z)
    if (std::abs(amp[z]) > eps) out.push_back(z);
  return out;
}

double max_distance(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) throw std::invalid_argument("max_distance: qubit mismatch");
  double d = 0;
  for (std::size_t z = 0; z < a.amp.size(); ++z)
    d = std::max(d, std::abs(a.amp[z] - b.amp[z]));
  return d;
}

std::vector<DumpEntry> dump(const StateVector& s) {
  std::vector<DumpEntry> out;
  for (auto z : s.support(1e-12))
    out.push_back({BitVec(s.n, z).to_hex(), s.amp[z].real(), s.amp[z].imag()});
  return out;
}

std::pair<BitVec, StateVector> gen_statevector(const OracleSet& o, Prg& rng) {
  const Params& p = o.params();
  if (p.perm_mode != PermMode::kExplicitTable)
    throw std::invalid_argument("statevector backend needs an explicit_table world");
  check_qubits(p.n);
  BitVec y(p.r, rng.bits(p.r));
  const CosetData& c = o.coset(y);
  std::vector<std::uint64_t> support;
  support.reserve(std::size_t{1} << (p.n - p.r));
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << (p.n - p.r)); ++w)
    support.push_back((gf2::mat_vec(c.a, BitVec(p.n - p.r, w)) ^ c.b).word());
  return {y, StateVector::uniform(p.n, support)};
}

void apply_o1(StateVector& s, std::size_t iter, const BitVec& m) {
  if (iter < 1 || iter > m.size())
    throw std::out_of_range("apply_o1: iter outside [1, l]");
  const std::uint64_t want = m.word() >> (m.size() - iter);
  const std::size_t shift = s.n - iter;
  for (std::uint64_t z = 0; z < s.amp.size(); ++z)
    if ((z >> shift) == want) s.amp[z] *= kI;
}

void walsh_hadamard(StateVector& s) {
  const std::size_t size = s.amp.size();
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const Amplitude a = s.amp[j], b = s.amp[j + h];
        s.amp[j] = a + b;
        s.amp[j + h] = a - b;
      }
  const double scale = std::pow(2.0, -0.5 * static_cast<double>(s.n));
  for (auto& a : s.amp) a *= scale;
}

void apply_o2(StateVector& s, std::size_t iter, const BitVec& y, OracleSet& o) {
  if (iter < 1 || iter > o.params().l)
    throw std::out_of_range("apply_o2: iter outside [1, l]");
  if (s.n != o.params().n) throw std::invalid_argument("apply_o2: qubit mismatch");
  const DualPredicate dual = o.dual_predicate(iter, y);
  o.record_query(Oracle::kD);
  walsh_hadamard(s);
  for (std::uint64_t v = 0; v < s.amp.size(); ++v)
    if (dual.accepts(v)) s.amp[v] *= kI;
  walsh_hadamard(s);
}

BitVec measure(const StateVector& s, Prg& rng) {
  if (std::abs(s.norm_sq() - 1.0) > kNormGuard)
    throw std::logic_error("measure: state is not normalized");
  const double u = rng.uniform01();
  double acc = 0;
  std::uint64_t last = 0;
  for (std::uint64_t z = 0; z < s.amp.size(); ++z) {
    const double pz = std::norm(s.amp[z]);
    if (pz == 0) continue;
    last = z;
    acc += pz;
    if (u < acc) return BitVec(s.n, z);
  }
  return BitVec(s.n, last);  // rounding slack at the top end
}

BitVec sign_statevector(OracleSet& o, const BitVec& pk, StateVector&& sk,
                        const BitVec& m, Prg& rng) {
  const Params& p = o.params();
  if (m.size() != p.l) throw std::invalid_argument("sign: message length != l");
  if (pk.size() != p.r) throw std::invalid_argument("sign: pk length != r");
  StateVector s = std::move(sk);
  for (std::size_t iter = 1; iter <= p.l; ++iter) {
    apply_o1(s, iter, m);
    apply_o2(s, iter, pk, o);
  }
  return measure(s, rng);
}

}  // namespace osslab::qsim
