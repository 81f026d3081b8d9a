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

#include "osslab/prg.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace osslab {
namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialisation failed");
}

Seed keyed_hash(const Seed& key, std::span<const std::uint8_t> message) {
  ensure_sodium();
  Seed out{};
  crypto_generichash(out.data(), out.size(), message.data(), message.size(),
                     key.data(), key.size());
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string seed_to_hex(const Seed& seed) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto byte : seed) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xf]);
  }
  return out;
}

Seed seed_from_hex(std::string_view hex) {
  if (hex.size() != 64)
    throw std::invalid_argument("seed must be 64 hex digits");
  Seed seed{};
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("seed is not hex");
    seed[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return seed;
}

Seed split_seed(const Seed& master, std::uint64_t index) {
  std::array<std::uint8_t, 14> msg{'s', 'p', 'l', 'i', 't', 0};
  for (int b = 0; b < 8; ++b)
    msg[6 + b] = static_cast<std::uint8_t>(index >> (8 * b));
  return keyed_hash(master, msg);
}

Seed seed_from_u64(std::uint64_t value) {
  Seed seed{};
  for (int b = 0; b < 8; ++b)
    seed[31 - b] = static_cast<std::uint8_t>(value >> (8 * b));
  return seed;
}

Prg::Prg(const Seed& key) : key_(key) { ensure_sodium(); }

Prg Prg::derive(const Seed& seed, std::string_view label,
                std::span<const std::uint8_t> extra) {
  std::string msg(label);
  msg.push_back('\0');
  msg.append(reinterpret_cast<const char*>(extra.data()), extra.size());
  return Prg(keyed_hash(
      seed, {reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()}));
}

Prg Prg::derive(const Seed& seed, std::string_view label,
                std::uint64_t extra) {
  std::array<std::uint8_t, 8> bytes{};
  for (int b = 0; b < 8; ++b)
    bytes[b] = static_cast<std::uint8_t>(extra >> (8 * b));
  return derive(seed, label, bytes);
}

void Prg::refill() {
  static constexpr std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES>
      kNonce{};
  std::memset(buffer_.data(), 0, buffer_.size());
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(),
                                     buffer_.size(), kNonce.data(), block_,
                                     key_.data());
  block_ += static_cast<std::uint32_t>(buffer_.size() / 64);
  pos_ = 0;
}

Prg::result_type Prg::operator()() {
  if (pos_ + 8 > buffer_.size()) refill();
  std::uint64_t v;
  std::memcpy(&v, buffer_.data() + pos_, 8);
  pos_ += 8;
  return v;
}

std::uint64_t Prg::bits(std::size_t k) {
  if (k == 0) return 0;
  std::uint64_t v = (*this)();
  return k >= 64 ? v : v & ((std::uint64_t{1} << k) - 1);
}

std::uint64_t Prg::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Prg::below: zero bound");
  // Rejection on the largest multiple of bound keeps the result unbiased.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    std::uint64_t v = (*this)();
    if (v < limit) return v % bound;
  }
}

double Prg::uniform01() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace osslab
