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

#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace osslab {

struct testing_access {
  static SecretKey clone(const SecretKey& sk) { return sk.clone_unchecked(); }
};

namespace {

OracleSet world(std::uint64_t seed, Variant v = Variant::kStandard,
                std::size_t n = 8, std::size_t r = 3, std::size_t l = 2) {
  return build_oracles(Params::toy(n, r, l, 0, v), seed_from_u64(seed));
}

std::vector<std::uint8_t> bytes(std::string_view s) { return {s.begin(), s.end()}; }

class BothBackends : public ::testing::TestWithParam<Backend> {};

TEST_P(BothBackends, PerfectCorrectness) {
  for (int t = 0; t < 100; ++t) {
    auto o = world(100 + t);
    Prg rng(seed_from_u64(200 + t));
    auto [pk, sk] = gen(o, GetParam(), rng);
    const BitVec m(2, rng.bits(2));
    const auto before = o.counts();
    Signature sig = sign(o, pk, sk, m, rng);
    EXPECT_EQ((o.counts() - before), (QueryCounts{0, 0, 2, 0, 0}));
    EXPECT_TRUE(sk.consumed());
    const auto mid = o.counts();
    EXPECT_TRUE(verify(o, pk, m, sig));
    EXPECT_EQ((o.counts() - mid), (QueryCounts{0, 1, 0, 0, 0}));
  }
}

TEST_P(BothBackends, SecondSignIsOneShotViolation) {
  auto o = world(1);
  Prg rng(seed_from_u64(2));
  auto [pk, sk] = gen(o, GetParam(), rng);
  sign(o, pk, sk, BitVec(2), rng);
  EXPECT_THROW(sign(o, pk, sk, BitVec(2, 1), rng), OneShotViolation);
  EXPECT_THROW(sign(o, pk, sk, BitVec(2), rng), OneShotViolation);
}

INSTANTIATE_TEST_SUITE_P(Scheme, BothBackends,
                         ::testing::Values(Backend::kStatevector, Backend::kSymbolic),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Scheme, OneShotUnderRandomCallSequences) {
  auto o = world(3);
  Prg rng(seed_from_u64(4));
  std::vector<std::pair<PublicKey, SecretKey>> keys;
  for (int k = 0; k < 6; ++k) keys.push_back(gen(o, Backend::kSymbolic, rng));
  std::vector<int> uses(keys.size(), 0);
  for (int step = 0; step < 200; ++step) {
    const auto k = rng.below(keys.size());
    auto& [pk, sk] = keys[k];
    const BitVec m(2, rng.bits(2));
    if (uses[k] == 0) {
      EXPECT_TRUE(verify(o, pk, m, sign(o, pk, sk, m, rng)));
    } else {
      EXPECT_THROW(sign(o, pk, sk, m, rng), OneShotViolation);
    }
    ++uses[k];
  }
}

TEST(Scheme, RejectsMismatchedInputs) {
  auto o = world(5), other = world(6);
  Prg rng(seed_from_u64(7));
  auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
  EXPECT_THROW(sign(o, pk, sk, BitVec(3), rng), std::invalid_argument);
  EXPECT_FALSE(sk.consumed());
  EXPECT_THROW(sign(other, pk, sk, BitVec(2), rng), std::invalid_argument);
  EXPECT_THROW(verify(o, pk, BitVec(2), Signature{BitVec(7)}), std::invalid_argument);
  auto feistel = build_oracles(
      Params::toy(30, 10, 2, 0, Variant::kStandard, PermMode::kFeistel), seed_from_u64(8));
  EXPECT_THROW(gen(feistel, Backend::kStatevector, rng), std::invalid_argument);
  auto original = world(9, Variant::kOriginal);
  auto [opk, osk] = gen(original, Backend::kSymbolic, rng);
  EXPECT_THROW(sign(original, opk, osk, BitVec(2), rng), std::invalid_argument);
}

TEST(Scheme, DifferentRngsGiveDifferentKeys) {
  auto o = build_oracles(Params::toy(30, 20, 2, 0, Variant::kStandard, PermMode::kFeistel),
                         seed_from_u64(10));
  std::set<BitVec> pks;
  for (int t = 0; t < 20; ++t) {
    Prg rng(seed_from_u64(t));
    pks.insert(gen(o, Backend::kSymbolic, rng).first.y);
  }
  EXPECT_EQ(pks.size(), 20u);
}

TEST(Verify, WrongPrefixRejectedEvenInsideCoset) {
  auto o = world(11);
  Prg rng(seed_from_u64(12));
  auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
  const auto coset = testutil::w_set(o.coset(pk.y), 8, 3, BitVec(2), 0);
  for (auto u : coset) {
    const BitVec sigma(8, u);
    BitVec wrong = sigma.prefix(2);
    wrong.flip(1);
    EXPECT_FALSE(verify(o, pk, wrong, Signature{sigma}));
    EXPECT_TRUE(verify(o, pk, sigma.prefix(2), Signature{sigma}));
  }
}

TEST(Verify, ExhaustiveAcceptCount) {
  auto o = world(13);
  const PublicKey pk{BitVec(3, 4), o.spec()};
  for (std::uint64_t mw = 0; mw < 4; ++mw) {
    int accepted = 0;
    for (std::uint64_t s = 0; s < 256; ++s)
      accepted += verify(o, pk, BitVec(2, mw), Signature{BitVec(8, s)});
    EXPECT_EQ(accepted, 8);  // 2^{n-r-l}
  }
}

TEST(Collision, ClonedKeySignsTwoMessages) {
  auto o = world(14);
  Prg rng(seed_from_u64(15));
  auto [pk, sk] = gen(o, Backend::kStatevector, rng);
  SecretKey twin = testing_access::clone(sk);
  const BitVec m0 = BitVec::from_bits("00"), m1 = BitVec::from_bits("11");
  Signature s0 = sign(o, pk, sk, m0, rng);
  Signature s1 = sign(o, pk, twin, m1, rng);
  auto c = extract_collision(o, pk, {m0, s0}, {m1, s1});
  EXPECT_NE(c.x0, c.x1);
  EXPECT_EQ(o.h(c.x0), pk.y);
  EXPECT_EQ(o.h(c.x1), pk.y);
  EXPECT_THROW(extract_collision(o, pk, {m0, s0}, {m0, s0}), std::invalid_argument);
  EXPECT_THROW(extract_collision(o, pk, {m1, s0}, {m1, s1}), std::invalid_argument);
}

TEST(Collision, EveryDistinctValidPairIsAnHCollision) {
  // Brute-force forger: every string that verifies for some message.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto o = world(16 + seed);
    const PublicKey pk{BitVec(3, seed), o.spec()};
    std::vector<std::pair<BitVec, Signature>> valid;
    for (std::uint64_t s = 0; s < 256; ++s)
      for (std::uint64_t mw = 0; mw < 4; ++mw)
        if (verify(o, pk, BitVec(2, mw), Signature{BitVec(8, s)}))
          valid.push_back({BitVec(2, mw), Signature{BitVec(8, s)}});
    ASSERT_EQ(valid.size(), 32u);
    int pairs = 0;
    for (std::size_t i = 0; i < valid.size(); ++i)
      for (std::size_t j = i + 1; j < valid.size(); ++j) {
        auto c = extract_collision(o, pk, valid[i], valid[j]);
        EXPECT_NE(c.x0, c.x1);
        EXPECT_EQ(o.h(c.x0), o.h(c.x1));
        EXPECT_EQ(o.h(c.x0), pk.y);
        ++pairs;
      }
    EXPECT_EQ(pairs, 32 * 31 / 2);
  }
}

TEST(Incompressible, CorrectAndNeverQueriesPinv) {
  for (int t = 0; t < 100; ++t) {
    auto o = world(300 + t, Variant::kIncompressible, 9, 3, 3);
    Prg rng(seed_from_u64(400 + t));
    auto [pk, sk] = gen(o, t % 2 ? Backend::kSymbolic : Backend::kStatevector, rng);
    const BitVec m(2, rng.bits(2));
    Signature sig = sign_incompressible(o, pk, sk, m, rng);
    EXPECT_TRUE(verify_incompressible(o, pk, m, sig));
    EXPECT_EQ(o.counts().p_inv, 0u);
    EXPECT_EQ(o.counts().d0, 1u);
    const auto& c = o.coset(pk.y);
    EXPECT_TRUE(c.b.get(3));
    EXPECT_FALSE(sig.sigma.get(3));
    const BitVec diff = sig.sigma ^ c.b;
    EXPECT_FALSE(diff.is_zero());
    EXPECT_TRUE(gf2::column_span(c.a).contains(diff));
  }
}

TEST(Incompressible, VariantMismatchIsAnError) {
  auto std_world = world(20);
  Prg rng(seed_from_u64(21));
  auto [pk, sk] = gen(std_world, Backend::kSymbolic, rng);
  EXPECT_THROW(sign_incompressible(std_world, pk, sk, BitVec(1), rng), std::invalid_argument);
  EXPECT_THROW(verify_incompressible(std_world, pk, BitVec(1), Signature{BitVec(8)}),
               std::invalid_argument);
  auto inc = world(22, Variant::kIncompressible, 9, 3, 3);
  auto [ipk, isk] = gen(inc, Backend::kSymbolic, rng);
  EXPECT_THROW(sign_incompressible(inc, ipk, isk, BitVec(3), rng), std::invalid_argument);
}

TEST(RomHash, DeterministicAndKeyed) {
  const Seed a = seed_from_u64(1), b = seed_from_u64(2);
  EXPECT_EQ(rom_hash(a, "hello", 16), rom_hash(a, "hello", 16));
  EXPECT_EQ(rom_hash(a, "hello", 16).size(), 16u);
  EXPECT_EQ(rom_hash(a, "hello", 8), rom_hash(a, "hello", 16).prefix(8));
  EXPECT_NE(rom_hash(a, "hello", 64), rom_hash(b, "hello", 64));
  EXPECT_NE(rom_hash(a, "hello", 64), rom_hash(a, "hellp", 64));
  EXPECT_THROW(rom_hash(a, "x", 65), std::invalid_argument);
}

TEST(HashAndSign, RoundTripsAcrossLengths) {
  for (std::size_t len : {0u, 1u, 10000u}) {
    auto o = world(23 + len);
    Prg rng(seed_from_u64(24));
    auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
    std::vector<std::uint8_t> msg(len);
    for (auto& c : msg) c = static_cast<std::uint8_t>(rng.bits(8));
    Signature sig = hs_sign(o, pk, sk, msg, rng);
    EXPECT_TRUE(hs_verify(o, pk, msg, sig));
    if (len > 0) {
      msg[0] ^= 1;
      // A different message verifies only if its digest prefix collides.
      EXPECT_EQ(hs_verify(o, pk, msg, sig), rom_hash(o.seed(), msg, 2) == sig.sigma.prefix(2));
    }
  }
}

TEST(HashAndSign, BirthdayCollisionSharesOneSignature) {
  auto o = build_oracles(Params::toy(14, 3, 8), seed_from_u64(25));
  std::map<BitVec, std::string> seen;
  std::string m0, m1;
  for (int i = 0;; ++i) {
    std::string msg = "message-" + std::to_string(i);
    auto [it, fresh] = seen.emplace(rom_hash(o.seed(), msg, 8), msg);
    if (!fresh) {
      m0 = it->second;
      m1 = msg;
      break;
    }
  }
  ASSERT_NE(m0, m1);
  Prg rng(seed_from_u64(26));
  auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
  Signature sig = hs_sign(o, pk, sk, bytes(m0), rng);
  EXPECT_TRUE(hs_verify(o, pk, bytes(m0), sig));
  EXPECT_TRUE(hs_verify(o, pk, bytes(m1), sig));
}

TEST(HashAndSign, RequiresStandardVariant) {
  auto o = world(27, Variant::kIncompressible, 9, 3, 3);
  Prg rng(seed_from_u64(28));
  auto [pk, sk] = gen(o, Backend::kSymbolic, rng);
  EXPECT_THROW(hs_sign(o, pk, sk, bytes("x"), rng), std::invalid_argument);
}

}  // namespace
}  // namespace osslab
