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

#include "osslab/scheme.hpp"

#include <sodium.h>

#include <array>
#include <atomic>
#include <string>
#include <variant>

namespace osslab {

std::string_view to_string(Backend b) {
  return b == Backend::kStatevector ? "statevector" : "symbolic";
}

Backend backend_from_string(std::string_view s) {
  if (s == "statevector") return Backend::kStatevector;
  if (s == "symbolic") return Backend::kSymbolic;
  throw std::invalid_argument("unknown backend: " + std::string(s));
}

struct SecretKey::Impl {
  std::variant<qsim::StateVector, coset::CosetState> state;
  std::atomic<bool> consumed{false};
};

SecretKey::SecretKey(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
SecretKey::SecretKey(SecretKey&&) noexcept = default;
SecretKey& SecretKey::operator=(SecretKey&&) noexcept = default;
SecretKey::~SecretKey() = default;

SecretKey SecretKey::clone_unchecked() const {
  auto impl = std::make_unique<Impl>();
  impl->state = impl_->state;
  impl->consumed = impl_->consumed.load();
  return SecretKey(std::move(impl));
}

Backend SecretKey::backend() const {
  return impl_->state.index() == 0 ? Backend::kStatevector : Backend::kSymbolic;
}

bool SecretKey::consumed() const { return impl_->consumed.load(); }

const coset::CosetState& SecretKey::symbolic_state() const {
  if (consumed()) throw OneShotViolation();
  const auto* st = std::get_if<coset::CosetState>(&impl_->state);
  if (!st) throw std::logic_error("secret key is not symbolic");
  return *st;
}

SecretKey SecretKey::from_symbolic_state(coset::CosetState st) {
  auto impl = std::make_unique<Impl>();
  impl->state = std::move(st);
  return SecretKey(std::move(impl));
}

std::pair<PublicKey, SecretKey> gen(const OracleSet& o, Backend backend, Prg& rng) {
  auto impl = std::make_unique<SecretKey::Impl>();
  BitVec y;
  if (backend == Backend::kStatevector) {
    auto [pk, sv] = qsim::gen_statevector(o, rng);
    y = pk;
    impl->state = std::move(sv);
  } else {
    auto [pk, st] = coset::gen_symbolic(o, rng);
    y = pk;
    impl->state = std::move(st);
  }
  return {PublicKey{y, o.spec()}, SecretKey(std::move(impl))};
}

namespace {

void check_world(const OracleSet& o, const PublicKey& pk) {
  if (pk.world != o.spec()) throw std::invalid_argument("public key belongs to another world");
  if (pk.y.size() != o.params().r) throw std::invalid_argument("public key length != r");
}

}  // namespace

Signature sign(OracleSet& o, const PublicKey& pk, SecretKey& sk, const BitVec& m,
               Prg& rng) {
  check_world(o, pk);
  if (!o.params().structured())
    throw std::invalid_argument("sign: world has unstructured A_y");
  if (m.size() != o.params().l) throw std::invalid_argument("sign: message length != l");
  if (!sk.impl_ || sk.impl_->consumed.exchange(true)) throw OneShotViolation();
  auto state = std::move(sk.impl_->state);
  sk.impl_->state = coset::CosetState{};
  if (auto* sv = std::get_if<qsim::StateVector>(&state))
    return {qsim::sign_statevector(o, pk.y, std::move(*sv), m, rng)};
  return {coset::sign_symbolic(o, pk.y, std::move(std::get<coset::CosetState>(state)),
                               m, rng)};
}

bool verify(OracleSet& o, const PublicKey& pk, const BitVec& m, const Signature& sig) {
  check_world(o, pk);
  const Params& p = o.params();
  if (m.size() != p.l || sig.sigma.size() != p.n)
    throw std::invalid_argument("verify: length mismatch");
  const bool in_coset = o.p_inv(pk.y, sig.sigma).has_value();
  return sig.sigma.prefix(p.l) == m && in_coset;
}

Collision extract_collision(OracleSet& o, const PublicKey& pk,
                            const std::pair<BitVec, Signature>& first,
                            const std::pair<BitVec, Signature>& second) {
  if (first == second) throw std::invalid_argument("extract_collision: identical pairs");
  if (!verify(o, pk, first.first, first.second) ||
      !verify(o, pk, second.first, second.second))
    throw std::invalid_argument("extract_collision: a pair does not verify");
  auto x0 = o.p_inv(pk.y, first.second.sigma);
  auto x1 = o.p_inv(pk.y, second.second.sigma);
  return {*x0, *x1};
}

namespace {

void require_incompressible(const OracleSet& o, const BitVec& m) {
  if (o.params().variant != Variant::kIncompressible)
    throw std::invalid_argument("world is not the incompressible variant");
  if (m.size() + 1 != o.params().l)
    throw std::invalid_argument("incompressible message length != l - 1");
}

}  // namespace

Signature sign_incompressible(OracleSet& o, const PublicKey& pk, SecretKey& sk,
                              const BitVec& m, Prg& rng) {
  require_incompressible(o, m);
  return sign(o, pk, sk, m.concat(BitVec(1)), rng);
}

bool verify_incompressible(OracleSet& o, const PublicKey& pk, const BitVec& m,
                           const Signature& sig) {
  require_incompressible(o, m);
  check_world(o, pk);
  if (sig.sigma.size() != o.params().n) throw std::invalid_argument("verify: length mismatch");
  const bool member = o.d0(pk.y, sig.sigma);
  return sig.sigma.prefix(o.params().l) == m.concat(BitVec(1)) && member;
}

BitVec rom_hash(const Seed& seed, std::span<const std::uint8_t> msg, std::size_t l) {
  if (l > 64) throw std::invalid_argument("rom_hash: l > 64");
  if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  std::array<std::uint8_t, 35> key{};
  std::copy(seed.begin(), seed.end(), key.begin());
  key[32] = 'r';
  key[33] = 'o';
  key[34] = 'm';
  std::array<std::uint8_t, 8> out{};
  crypto_generichash(out.data(), out.size(), msg.data(), msg.size(), key.data(),
                     key.size());
  std::uint64_t word = 0;
  for (auto byte : out) word = word << 8 | byte;
  return BitVec(l, l == 0 ? 0 : word >> (64 - l));
}

Signature hs_sign(OracleSet& o, const PublicKey& pk, SecretKey& sk,
                  std::span<const std::uint8_t> msg, Prg& rng) {
  if (o.params().variant != Variant::kStandard)
    throw std::invalid_argument("hash-and-sign needs the standard variant");
  return sign(o, pk, sk, rom_hash(o.seed(), msg, o.params().l), rng);
}

bool hs_verify(OracleSet& o, const PublicKey& pk, std::span<const std::uint8_t> msg,
               const Signature& sig) {
  if (o.params().variant != Variant::kStandard)
    throw std::invalid_argument("hash-and-sign needs the standard variant");
  return verify(o, pk, rom_hash(o.seed(), msg, o.params().l), sig);
}

}  // namespace osslab
