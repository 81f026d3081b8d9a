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

#ifndef OSSLAB_SCHEME_HPP_
#define OSSLAB_SCHEME_HPP_

// One-shot signatures in the classical oracle model: Gen/Sign/Ver, the
// incompressible variant, hash-and-sign, and the collision extractor.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "osslab/coset.hpp"
#include "osslab/oracles.hpp"
#include "osslab/qsim.hpp"

namespace osslab {

enum class Backend { kStatevector, kSymbolic };
std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view s);

/// Raised when a consumed secret key is used again.
class OneShotViolation : public std::logic_error {
 public:
  OneShotViolation() : std::logic_error("one-shot violation: secret key already used") {}
};

struct PublicKey {
  BitVec y;
  WorldSpec world;
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct Signature {
  BitVec sigma;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct testing_access;  // defined only in test code

/// Single-owner quantum key. The first sign consumes it; later attempts
/// throw OneShotViolation. There is deliberately no copy.
class SecretKey {
 public:
  SecretKey(SecretKey&&) noexcept;
  SecretKey& operator=(SecretKey&&) noexcept;
  SecretKey(const SecretKey&) = delete;
  SecretKey& operator=(const SecretKey&) = delete;
  ~SecretKey();

  Backend backend() const;
  bool consumed() const;

  /// Symbolic keys only: the internal state, for TEST-ONLY serialization.
  const coset::CosetState& symbolic_state() const;
  /// Rebuilds a symbolic key from serialized TEST-ONLY state.
  static SecretKey from_symbolic_state(coset::CosetState st);

 private:
  friend struct testing_access;
  friend std::pair<PublicKey, SecretKey> gen(const OracleSet&, Backend, Prg&);
  friend Signature sign(OracleSet&, const PublicKey&, SecretKey&, const BitVec&,
                        Prg&);

  struct Impl;
  explicit SecretKey(std::unique_ptr<Impl> impl);
  /// Bypasses one-shot semantics; reachable only through testing_access.
  SecretKey clone_unchecked() const;
  std::unique_ptr<Impl> impl_;
};

/// Statevector needs an explicit-table world with n <= 24.
std::pair<PublicKey, SecretKey> gen(const OracleSet& o, Backend backend, Prg& rng);

/// Consumes sk; records exactly l logical D queries.
Signature sign(OracleSet& o, const PublicKey& pk, SecretKey& sk, const BitVec& m,
               Prg& rng);

/// sigma[1:l] = m and P^-1(pk, sigma) != bottom. Exactly one P^-1 query.
bool verify(OracleSet& o, const PublicKey& pk, const BitVec& m,
            const Signature& sig);

struct Collision {
  BitVec x0;
  BitVec x1;
};

/// Turns two distinct valid (m, sigma) pairs under one pk into an
/// H-collision. Throws std::invalid_argument if either pair fails to verify
/// or the pairs are equal.
Collision extract_collision(OracleSet& o, const PublicKey& pk,
                            const std::pair<BitVec, Signature>& first,
                            const std::pair<BitVec, Signature>& second);

/// Incompressible variant: messages are l - 1 bits, signed as m || 0.
Signature sign_incompressible(OracleSet& o, const PublicKey& pk, SecretKey& sk,
                              const BitVec& m, Prg& rng);
/// sigma[1:l] = m || 0 and D0(pk, sigma) = 1. Never queries P^-1.
bool verify_incompressible(OracleSet& o, const PublicKey& pk, const BitVec& m,
                           const Signature& sig);

/// Keyed BLAKE2b (key = seed || "rom"), first l bits of the digest. l <= 64.
BitVec rom_hash(const Seed& seed, std::span<const std::uint8_t> msg, std::size_t l);
inline BitVec rom_hash(const Seed& seed, std::string_view msg, std::size_t l) {
  return rom_hash(seed, {reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()}, l);
}

Signature hs_sign(OracleSet& o, const PublicKey& pk, SecretKey& sk,
                  std::span<const std::uint8_t> msg, Prg& rng);
bool hs_verify(OracleSet& o, const PublicKey& pk, std::span<const std::uint8_t> msg,
               const Signature& sig);

}  // namespace osslab

#endif  // OSSLAB_SCHEME_HPP_
