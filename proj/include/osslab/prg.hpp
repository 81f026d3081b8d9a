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

#ifndef OSSLAB_PRG_HPP_
#define OSSLAB_PRG_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

namespace osslab {

/// 32-byte seed identifying a world or an experiment.
using Seed = std::array<std::uint8_t, 32>;

std::string seed_to_hex(const Seed& seed);
/// Throws std::invalid_argument unless `hex` is exactly 64 hex digits.
Seed seed_from_hex(std::string_view hex);
/// Counter-mode child seed: independent-looking seeds for trial `index`.
Seed split_seed(const Seed& master, std::uint64_t index);
/// Seed built from a small integer, for tests and examples.
Seed seed_from_u64(std::uint64_t value);

/// Deterministic ChaCha20 keystream generator. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> and <algorithm>.
class Prg {
 public:
  using result_type = std::uint64_t;

  explicit Prg(const Seed& key);
  /// Domain-separated generator keyed by BLAKE2b(seed; label || extra).
  static Prg derive(const Seed& seed, std::string_view label,
                    std::span<const std::uint8_t> extra = {});
  static Prg derive(const Seed& seed, std::string_view label,
                    std::uint64_t extra);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform value in [0, 2^k), k <= 64.
  std::uint64_t bits(std::size_t k);
  /// Uniform value in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return bits(1) != 0; }
  /// Uniform in [0, 1).
  double uniform01();

 private:
  void refill();

  Seed key_;
  std::uint32_t block_ = 0;
  std::array<std::uint8_t, 1024> buffer_{};
  std::size_t pos_ = 1024;
};

}  // namespace osslab

#endif  // OSSLAB_PRG_HPP_
