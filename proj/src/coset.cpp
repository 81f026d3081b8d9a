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

#include "osslab/coset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osslab::coset {

namespace {

// (i - 1) / sqrt(2)
const std::complex<double> kStepPhase{-M_SQRT1_2, M_SQRT1_2};

}  // namespace

std::pair<BitVec, CosetState> gen_symbolic(const OracleSet& o, Prg& rng) {
  const Params& p = o.params();
  BitVec y(p.r, rng.bits(p.r));
  const CosetData& c = o.coset(y);
  CosetState st;
  st.y = y;
  st.a = c.a;
  st.b = c.b;
  st.n = p.n;
  st.r = p.r;
  st.l = p.l;
  return {y, std::move(st)};
}

CosetState sign_step_symbolic(CosetState st, std::size_t iter, const BitVec& m) {
  if (m.size() != st.l) throw std::invalid_argument("sign step: message length != l");
  if (iter != st.matched + 1 || iter > st.l)
    throw std::logic_error("sign step: iteration out of order");
  if (m.prefix(st.matched) != st.m_prefix)
    throw std::logic_error("sign step: message disagrees with matched prefix");
  st.matched = iter;
  st.m_prefix = m.prefix(iter);
  st.phase *= kStepPhase;
  return st;
}

BitVec sign_symbolic(OracleSet& o, const BitVec& pk, CosetState&& st,
                     const BitVec& m, Prg& rng) {
  const Params& p = o.params();
  if (m.size() != p.l) throw std::invalid_argument("sign: message length != l");
  if (pk != st.y) throw std::invalid_argument("sign: key does not match pk");
  if (st.matched != 0) throw std::logic_error("sign: state already advanced");
  if (!p.structured())
    throw std::invalid_argument("sign: world has unstructured A_y");
  CosetState s = std::move(st);
  for (std::size_t iter = 1; iter <= p.l; ++iter) {
    s = sign_step_symbolic(std::move(s), iter, m);
    o.record_query(Oracle::kD);
  }
  // The top l rows of A are [I 0], so the prefix pins w[1:l].
  const std::size_t free_bits = p.n - p.r - p.l;
  const std::uint64_t head = (m ^ s.b.prefix(p.l)).word();
  const std::uint64_t tail = rng.bits(free_bits);
  const std::uint64_t w = free_bits >= 64 ? tail : (head << free_bits) | tail;
  return gf2::mat_vec(s.a, BitVec(p.n - p.r, w)) ^ s.b;
}

std::optional<BitVec> sample_prefixed_coset(const BitMatrix& a, const BitVec& b,
                                            const BitVec& prefix, Prg& rng) {
  const std::size_t k = prefix.size();
  if (k == 0) return gf2::mat_vec(a, gf2::random_vec(rng, a.cols())) ^ b;
  const BitMatrix top = gf2::row_slice(a, 1, k);
  auto w0 = gf2::solve(top, prefix ^ b.prefix(k));
  if (!w0) return std::nullopt;
  const Subspace ker = gf2::kernel(top);
  const BitVec w = *w0 ^ ker.combination(rng.bits(ker.dim()));
  return gf2::mat_vec(a, w) ^ b;
}

std::vector<BitVec> enumerate_support(const CosetState& st) {
  if (st.support_log2() > kMaxEnumerateBits)
    throw std::invalid_argument("enumerate_support: support too large");
  // Generic route (solve + kernel), independent of the block structure the
  // sampler relies on.
  std::vector<BitVec> out;
  const std::size_t k = st.matched;
  BitVec w0(st.a.cols());
  Subspace ker = Subspace::full(st.a.cols());
  if (k > 0) {
    const BitMatrix top = gf2::row_slice(st.a, 1, k);
    auto sol = gf2::solve(top, st.m_prefix ^ st.b.prefix(k));
    if (!sol) return out;
    w0 = *sol;
    ker = gf2::kernel(top);
  }
  if (ker.dim() > kMaxEnumerateBits)
    throw std::invalid_argument("enumerate_support: support too large");
  out.reserve(std::size_t{1} << ker.dim());
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << ker.dim()); ++c)
    out.push_back(gf2::mat_vec(st.a, w0 ^ ker.combination(c)) ^ st.b);
  std::sort(out.begin(), out.end());
  return out;
}

qsim::StateVector to_statevector(const CosetState& st) {
  if (st.n > qsim::kMaxQubits)
    throw std::invalid_argument("to_statevector: n exceeds the 24-qubit limit");
  std::vector<std::uint64_t> idx;
  for (const auto& v : enumerate_support(st)) idx.push_back(v.word());
  return qsim::StateVector::uniform(st.n, idx, st.phase);
}

}  // namespace osslab::coset
