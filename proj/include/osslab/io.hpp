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

#ifndef OSSLAB_IO_HPP_
#define OSSLAB_IO_HPP_

// Versioned JSON forms of worlds, keys and signatures, plus atomic file
// writes. Every document carries "v": 1; anything else is rejected.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "osslab/scheme.hpp"

namespace osslab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed, mistyped or wrong-version input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json world_to_json(const WorldSpec& w);
WorldSpec world_from_json(const Json& j);

Json counts_to_json(const QueryCounts& q);

Json public_key_to_json(const PublicKey& pk);
PublicKey public_key_from_json(const Json& j);

/// How the signed bits were obtained from the user's message.
enum class MessageMode { kBits, kHashed };

struct SignatureDoc {
  WorldSpec world;
  BitVec y;
  MessageMode mode = MessageMode::kBits;
  Signature sig;
};
Json signature_to_json(const SignatureDoc& s);
SignatureDoc signature_from_json(const Json& j);

/// TEST-ONLY serialized symbolic key.
struct SecretKeyDoc {
  WorldSpec world;
  coset::CosetState state;
  bool consumed = false;
};
Json secret_key_to_json(const SecretKeyDoc& s);
/// `o` rebuilds the coset data for the stored y.
SecretKeyDoc secret_key_from_json(const Json& j, const OracleSet& o);
WorldSpec secret_key_world(const Json& j);

/// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_json_file(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace osslab::io

#endif  // OSSLAB_IO_HPP_
