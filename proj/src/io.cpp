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

#include "osslab/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace osslab::io {

namespace {

void check_header(const Json& j, std::string_view kind) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (!j.contains("v") || j["v"] != kSchemaVersion)
    throw FormatError("unsupported schema version (expected \"v\": 1)");
  if (!kind.empty() && (!j.contains("kind") || j["kind"] != kind))
    throw FormatError("expected a document of kind " + std::string(kind));
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("bad field: ") + key);
  }
}

BitVec hex_field(const Json& j, const char* key, std::size_t len) {
  try {
    return BitVec::from_hex(field<std::string>(j, key), len);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad field ") + key + ": " + e.what());
  }
}

std::string_view mode_name(MessageMode m) { return m == MessageMode::kBits ? "bits" : "hashed"; }

}  // namespace

Json world_to_json(const WorldSpec& w) {
  Json params{{"n", w.params.n},
              {"r", w.params.r},
              {"l", w.params.l},
              {"s", w.params.s},
              {"variant", to_string(w.params.variant)},
              {"perm_mode", to_string(w.params.perm_mode)}};
  if (w.params.lambda) params["lambda"] = *w.params.lambda;
  return Json{{"v", kSchemaVersion}, {"kind", "world"}, {"params", params},
              {"seed", seed_to_hex(w.seed)}};
}

WorldSpec world_from_json(const Json& j) {
  check_header(j, "world");
  const Json& p = j.contains("params") ? j["params"] : throw FormatError("missing field: params");
  WorldSpec w;
  try {
    w.params.n = field<std::size_t>(p, "n");
    w.params.r = field<std::size_t>(p, "r");
    w.params.l = field<std::size_t>(p, "l");
    w.params.s = field<std::size_t>(p, "s");
    w.params.variant = variant_from_string(field<std::string>(p, "variant"));
    w.params.perm_mode = perm_mode_from_string(field<std::string>(p, "perm_mode"));
    if (p.contains("lambda")) w.params.lambda = field<unsigned>(p, "lambda");
    w.seed = seed_from_hex(field<std::string>(j, "seed"));
    w.params.validate_shape();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return w;
}

Json counts_to_json(const QueryCounts& q) {
  return Json{{"P", q.p}, {"Pinv", q.p_inv}, {"D", q.d}, {"D0", q.d0}, {"Dprime", q.d_prime}};
}

Json public_key_to_json(const PublicKey& pk) {
  return Json{{"v", kSchemaVersion}, {"kind", "public_key"}, {"world", world_to_json(pk.world)},
              {"y", pk.y.to_hex()}};
}

PublicKey public_key_from_json(const Json& j) {
  check_header(j, "public_key");
  PublicKey pk;
  pk.world = world_from_json(field<Json>(j, "world"));
  pk.y = hex_field(j, "y", pk.world.params.r);
  return pk;
}

Json signature_to_json(const SignatureDoc& s) {
  return Json{{"v", kSchemaVersion},     {"kind", "signature"},
              {"world", world_to_json(s.world)}, {"y", s.y.to_hex()},
              {"message_mode", mode_name(s.mode)}, {"sigma", s.sig.sigma.to_hex()}};
}

SignatureDoc signature_from_json(const Json& j) {
  check_header(j, "signature");
  SignatureDoc s;
  s.world = world_from_json(field<Json>(j, "world"));
  s.y = hex_field(j, "y", s.world.params.r);
  const auto mode = field<std::string>(j, "message_mode");
  if (mode == "bits") s.mode = MessageMode::kBits;
  else if (mode == "hashed") s.mode = MessageMode::kHashed;
  else throw FormatError("bad field: message_mode");
  s.sig.sigma = hex_field(j, "sigma", s.world.params.n);
  return s;
}

Json secret_key_to_json(const SecretKeyDoc& s) {
  return Json{{"v", kSchemaVersion},
              {"kind", "secret_key"},
              {"test_only", true},
              {"note", "serialized simulation state; not a real quantum key"},
              {"world", world_to_json(s.world)},
              {"y", s.state.y.to_hex()},
              {"matched", s.state.matched},
              {"m_prefix", s.state.m_prefix.to_bits()},
              {"phase", {s.state.phase.real(), s.state.phase.imag()}},
              {"consumed", s.consumed}};
}

WorldSpec secret_key_world(const Json& j) {
  check_header(j, "secret_key");
  if (!field<bool>(j, "test_only")) throw FormatError("secret key is not marked test_only");
  return world_from_json(field<Json>(j, "world"));
}

SecretKeyDoc secret_key_from_json(const Json& j, const OracleSet& o) {
  SecretKeyDoc s;
  s.world = secret_key_world(j);
  if (!(s.world == o.spec())) throw FormatError("secret key belongs to a different world");
  const Params& p = s.world.params;
  coset::CosetState& st = s.state;
  st.y = hex_field(j, "y", p.r);
  const CosetData& c = o.coset(st.y);
  st.a = c.a;
  st.b = c.b;
  st.n = p.n;
  st.r = p.r;
  st.l = p.l;
  st.matched = field<std::size_t>(j, "matched");
  try {
    st.m_prefix = BitVec::from_bits(field<std::string>(j, "m_prefix"));
  } catch (const std::invalid_argument&) {
    throw FormatError("bad field: m_prefix");
  }
  if (st.matched > p.l || st.m_prefix.size() != st.matched)
    throw FormatError("inconsistent secret key state");
  const auto phase = field<std::vector<double>>(j, "phase");
  if (phase.size() != 2) throw FormatError("bad field: phase");
  st.phase = {phase[0], phase[1]};
  s.consumed = field<bool>(j, "consumed");
  return s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse(read_file(path)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace osslab::io
