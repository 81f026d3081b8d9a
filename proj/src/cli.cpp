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

#include "osslab/cli.hpp"

#include <sodium.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "osslab/experiments.hpp"
#include "osslab/io.hpp"

namespace osslab::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;
using Clock = std::chrono::steady_clock;

/// Bad flags or flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};


Seed seed_or_random(const std::string& hex) {
  if (!hex.empty()) {
    try {
      return seed_from_hex(hex);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  Seed s;
  if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
  randombytes_buf(s.data(), s.size());
  return s;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct MessageFlags {
  std::string bits;
  std::string file;

  void add_to(CLI::App* cmd) {
    auto* b = cmd->add_option("--message", bits, "message as a bit string, e.g. 0110");
    auto* f = cmd->add_option("--message-file", file, "arbitrary file, hashed before signing");
    b->excludes(f);
  }
  bool given() const { return !bits.empty() || !file.empty(); }
};

/// The bits actually handed to the scheme, or the raw bytes for hashing.
struct Message {
  io::MessageMode mode = io::MessageMode::kBits;
  BitVec bits{0};
  std::vector<std::uint8_t> bytes;
};

Message load_message(const MessageFlags& f, const Params& p) {
  Message msg;
  if (!f.file.empty()) {
    msg.mode = io::MessageMode::kHashed;
    const std::string data = io::read_file(f.file);
    msg.bytes.assign(data.begin(), data.end());
    return msg;
  }
  try {
    msg.bits = BitVec::from_bits(f.bits);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--message: ") + e.what());
  }
  const std::size_t want = p.variant == Variant::kIncompressible ? p.l - 1 : p.l;
  if (msg.bits.size() != want)
    throw UsageError("--message must have exactly " + std::to_string(want) + " bits");
  return msg;
}

Signature do_sign(OracleSet& o, const PublicKey& pk, SecretKey& sk, const Message& msg,
                  Prg& rng) {
  if (msg.mode == io::MessageMode::kHashed) return hs_sign(o, pk, sk, msg.bytes, rng);
  if (o.params().variant == Variant::kIncompressible)
    return sign_incompressible(o, pk, sk, msg.bits, rng);
  return sign(o, pk, sk, msg.bits, rng);
}

bool do_verify(OracleSet& o, const PublicKey& pk, const Message& msg, const Signature& sig) {
  if (msg.mode == io::MessageMode::kHashed) return hs_verify(o, pk, msg.bytes, sig);
  if (o.params().variant == Variant::kIncompressible)
    return verify_incompressible(o, pk, msg.bits, sig);
  return verify(o, pk, msg.bits, sig);
}

Backend parse_backend(const std::string& s) {
  try {
    return backend_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

WorldSpec load_world(const std::string& path) { return io::world_from_json(io::read_json_file(path)); }

Json run_record(std::string command, const WorldSpec& w, Json inputs, Json outputs,
                const QueryCounts& q, double wall_ms) {
  return Json{{"v", io::kSchemaVersion}, {"command", std::move(command)},
              {"world", io::world_to_json(w)}, {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)}, {"queries", io::counts_to_json(q)},
              {"wall_ms", wall_ms}};
}

std::string describe(const Params& p) {
  std::ostringstream ss;
  ss << "n=" << p.n << " r=" << p.r << " l=" << p.l << " s=" << p.s
     << " variant=" << to_string(p.variant) << " perm_mode=" << to_string(p.perm_mode);
  if (p.lambda) ss << " lambda=" << *p.lambda;
  return ss.str();
}

std::string queries_line(const QueryCounts& q) {
  std::ostringstream ss;
  ss << "P=" << q.p << " Pinv=" << q.p_inv << " D=" << q.d << " D0=" << q.d0
     << " Dprime=" << q.d_prime;
  return ss.str();
}

// ------------------------------------------------------------------ world

struct WorldNew {
  std::optional<unsigned> lambda;
  std::optional<std::size_t> n, r, l;
  std::size_t s = 0;
  std::string variant = "standard";
  std::string perm_mode;
  std::string seed;
  std::string out;
};

int cmd_world_new(const WorldNew& a, bool json, std::ostream& out, std::ostream& err) {
  WorldSpec w;
  Variant variant;
  try {
    variant = variant_from_string(a.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.lambda) {
    if (a.n || a.r || a.l) throw UsageError("--lambda excludes --n/--r/--l");
    w.params = Params::from_lambda(*a.lambda, variant);
  } else {
    if (!a.n || !a.r || !a.l) throw UsageError("need --lambda or all of --n, --r, --l");
    w.params = Params::toy(*a.n, *a.r, *a.l, a.s, variant,
                           *a.n <= 24 ? PermMode::kExplicitTable : PermMode::kFeistel);
  }
  if (!a.perm_mode.empty()) {
    try {
      w.params.perm_mode = perm_mode_from_string(a.perm_mode);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  w.params.validate_shape();
  try {
    w.params.validate_buildable();
  } catch (const std::invalid_argument& e) {
    err << "warning: world can be stored but not instantiated: " << e.what() << "\n";
  }
  if (w.params.n > qsim::kMaxQubits)
    err << "warning: n=" << w.params.n << " exceeds the statevector limit of "
        << qsim::kMaxQubits << " qubits; use the symbolic backend\n";
  w.seed = seed_or_random(a.seed);
  const Json doc = io::world_to_json(w);
  if (a.out.empty()) {
    out << io::dump(doc);
    return kExitOk;
  }
  io::write_file_atomic(a.out, io::dump(doc));
  if (json) out << io::dump(doc);
  else out << "wrote " << a.out << ": " << describe(w.params) << "\n";
  return kExitOk;
}

int cmd_world_show(const std::string& path, bool json, std::ostream& out) {
  const WorldSpec w = load_world(path);
  bool buildable = true;
  try {
    w.params.validate_buildable();
  } catch (const std::invalid_argument&) {
    buildable = false;
  }
  const bool statevector = buildable && w.params.perm_mode == PermMode::kExplicitTable &&
                           w.params.n <= qsim::kMaxQubits;
  if (json) {
    Json doc = io::world_to_json(w);
    doc["buildable"] = buildable;
    doc["statevector"] = statevector;
    out << io::dump(doc);
  } else {
    out << describe(w.params) << "\nseed " << seed_to_hex(w.seed) << "\nbuildable "
        << (buildable ? "yes" : "no") << "\nstatevector backend "
        << (statevector ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------- gen/sign/verify

struct GenArgs {
  std::string world, seed, backend = "symbolic", pk_out, sk_out, sig_out;
  bool unsafe_test_io = false;
  MessageFlags message;
};

int cmd_gen(const GenArgs& a, bool json, std::ostream& out, std::ostream& err) {
  const WorldSpec w = load_world(a.world);
  const Backend backend = parse_backend(a.backend);
  if (!a.sk_out.empty()) {
    if (!a.unsafe_test_io) throw UsageError("--sk-out requires --unsafe-test-io");
    if (backend != Backend::kSymbolic)
      throw UsageError("--sk-out is only available for the symbolic backend");
  }
  if (!a.sig_out.empty() && !a.message.given())
    throw UsageError("--sig-out needs --message or --message-file");
  if (a.message.given() && a.sig_out.empty())
    throw UsageError("--message needs --sig-out");

  const auto t0 = Clock::now();
  OracleSet o = build_oracles(w);
  Prg rng = Prg::derive(seed_or_random(a.seed), "cli-gen");
  std::optional<Message> msg;
  if (a.message.given()) msg = load_message(a.message, w.params);
  auto [pk, sk] = gen(o, backend, rng);
  std::optional<io::SecretKeyDoc> sk_doc;
  if (!a.sk_out.empty()) sk_doc = io::SecretKeyDoc{w, sk.symbolic_state(), false};

  Json outputs{{"pk", a.pk_out}};
  io::write_file_atomic(a.pk_out, io::dump(io::public_key_to_json(pk)));
  if (msg) {
    const Signature sig = do_sign(o, pk, sk, *msg, rng);
    io::write_file_atomic(a.sig_out,
                          io::dump(io::signature_to_json({w, pk.y, msg->mode, sig})));
    outputs["sig"] = a.sig_out;
    if (sk_doc) sk_doc->consumed = true;
  }
  if (sk_doc) {
    io::write_file_atomic(a.sk_out, io::dump(io::secret_key_to_json(*sk_doc)));
    outputs["sk"] = a.sk_out;
  } else if (!msg) {
    err << "note: the secret key lived only in this process and is now gone\n";
  }
  if (json) {
    out << io::dump(run_record("gen", w, Json{{"backend", a.backend}}, outputs, o.counts(),
                               ms_since(t0)));
  } else {
    out << "public key y=" << pk.y.to_hex() << " written to " << a.pk_out << "\n";
    if (msg) out << "signature written to " << a.sig_out << "\n";
  }
  return kExitOk;
}

struct SignArgs {
  std::string sk, seed, sig_out;
  bool unsafe_test_io = false;
  MessageFlags message;
};

int cmd_sign(const SignArgs& a, bool json, std::ostream& out, std::ostream& err) {
  if (!a.unsafe_test_io) throw UsageError("reading a serialized key requires --unsafe-test-io");
  if (!a.message.given()) throw UsageError("need --message or --message-file");
  const Json sk_json = io::read_json_file(a.sk);
  const WorldSpec w = io::secret_key_world(sk_json);
  const auto t0 = Clock::now();
  OracleSet o = build_oracles(w);
  io::SecretKeyDoc doc = io::secret_key_from_json(sk_json, o);
  if (doc.consumed) {
    err << "error: one-shot violation: " << a.sk << " has already signed\n";
    return kExitOneShot;
  }
  const Message msg = load_message(a.message, w.params);
  // Invalidate the stored key before producing anything.
  doc.consumed = true;
  io::write_file_atomic(a.sk, io::dump(io::secret_key_to_json(doc)));

  SecretKey sk = SecretKey::from_symbolic_state(doc.state);
  const PublicKey pk{doc.state.y, w};
  Prg rng = Prg::derive(seed_or_random(a.seed), "cli-sign");
  const Signature sig = do_sign(o, pk, sk, msg, rng);
  io::write_file_atomic(a.sig_out, io::dump(io::signature_to_json({w, pk.y, msg.mode, sig})));
  if (json) {
    out << io::dump(run_record("sign", w, Json{{"sk", a.sk}}, Json{{"sig", a.sig_out}},
                               o.counts(), ms_since(t0)));
  } else {
    out << "signature written to " << a.sig_out << " (" << queries_line(o.counts()) << ")\n";
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string pk, sig;
  MessageFlags message;
};

int cmd_verify(const VerifyArgs& a, bool json, std::ostream& out) {
  if (!a.message.given()) throw UsageError("need --message or --message-file");
  const PublicKey pk = io::public_key_from_json(io::read_json_file(a.pk));
  const io::SignatureDoc sig = io::signature_from_json(io::read_json_file(a.sig));
  const Message msg = load_message(a.message, pk.world.params);
  const auto t0 = Clock::now();
  OracleSet o = build_oracles(pk.world);
  bool ok = sig.world == pk.world && sig.y == pk.y && sig.mode == msg.mode;
  if (ok) ok = do_verify(o, pk, msg, sig.sig);
  if (json) {
    out << io::dump(run_record("verify", pk.world, Json{{"pk", a.pk}, {"sig", a.sig}},
                               Json{{"accept", ok}}, o.counts(), ms_since(t0)));
  } else {
    out << (ok ? "accept" : "reject") << "\n";
  }
  return ok ? kExitOk : kExitReject;
}

// ------------------------------------------------------ experiments, bench

std::string report_file_name(const distlab::ExperimentReport& r) {
  std::string name = r.name;
  if (r.params.contains("case")) name += "-" + r.params["case"].get<std::string>();
  return name + ".json";
}

int emit_reports(const std::vector<distlab::ExperimentReport>& reports, const std::string& dir,
                 bool json, std::ostream& out, std::ostream& err) {
  if (!dir.empty()) {
    fs::create_directories(dir);
    for (const auto& r : reports)
      io::write_file_atomic(fs::path(dir) / report_file_name(r), io::dump(r.to_json()));
  }
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    if (json) arr.push_back(r.to_json());
    else out << r.to_table() << (r.pass() ? "PASS " : "FAIL ") << r.name << "\n\n";
    for (const auto& m : r.metrics)
      if (!m.pass) err << "failing metric: " << r.name << "/" << m.id << "\n";
    all = all && r.pass();
  }
  if (json) out << io::dump(arr);
  return all ? kExitOk : kExitReject;
}

struct ExperimentArgs {
  std::string suite = "all", seed, out_dir;
  std::uint64_t trials = 0;
  unsigned threads = 0;
};

int cmd_experiments(const ExperimentArgs& a, bool json, std::ostream& out, std::ostream& err) {
  experiments::SuiteOptions opts;
  opts.trials = a.trials;
  opts.seed = a.seed.empty() ? seed_from_u64(0) : seed_or_random(a.seed);
  opts.threads = a.threads;
  const auto& names = experiments::suite_names();
  if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite: " + a.suite);
  return emit_reports(experiments::run_suite(a.suite, opts), a.out_dir, json, out, err);
}

struct DistinguisherArgs {
  std::size_t n = 6, r = 2;
  std::string which = "hash-and-first-bit", seed, out_dir;
  std::uint64_t trials = 100000;
  unsigned threads = 0;
};

int cmd_distinguisher(const DistinguisherArgs& a, bool json, std::ostream& out,
                      std::ostream& err) {
  distlab::SzCase which;
  if (a.which == "hash-only") which = distlab::SzCase::kHashOnly;
  else if (a.which == "hash-and-first-bit") which = distlab::SzCase::kHashAndFirstBit;
  else throw UsageError("--case must be hash-only or hash-and-first-bit");
  if (a.trials == 0) throw UsageError("--trials must be positive");
  const Seed seed = a.seed.empty() ? seed_from_u64(0) : seed_or_random(a.seed);
  Prg rng = Prg::derive(seed, "cli-distinguisher");
  auto rep = distlab::sz_distinguisher(a.n, a.r, split_seed(seed, 0xd157), which, a.trials,
                                       rng, a.threads);
  return emit_reports({rep}, a.out_dir, json, out, err);
}

struct BenchArgs {
  std::string world, op = "all", backend = "symbolic", seed;
  std::uint64_t reps = 100;
};

int cmd_bench(const BenchArgs& a, bool json, std::ostream& out) {
  const WorldSpec w = load_world(a.world);
  std::vector<experiments::BenchOp> ops;
  using experiments::BenchOp;
  for (BenchOp op : {BenchOp::kGen, BenchOp::kSign, BenchOp::kVerify})
    if (a.op == "all" || a.op == experiments::to_string(op)) ops.push_back(op);
  if (ops.empty()) throw UsageError("--op must be gen, sign, verify or all");
  if (a.reps == 0) throw UsageError("--reps must be positive");
  const Seed seed = a.seed.empty() ? seed_from_u64(0) : seed_or_random(a.seed);
  const auto rows = experiments::bench(w, parse_backend(a.backend), ops, a.reps, seed);
  const std::string gen_note =
      "gen prepares the coset state from the world's coset data directly, so it makes no "
      "P or P^-1 queries";
  if (json) {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json j{{"op", experiments::to_string(row.op)}, {"reps", row.reps},
             {"total_ms", row.total_ms}, {"ms_per_op", row.total_ms / double(row.reps)},
             {"queries_per_op", io::counts_to_json(row.per_op)}, {"uniform", row.uniform}};
      if (row.op == BenchOp::kGen) j["note"] = gen_note;
      arr.push_back(j);
    }
    out << io::dump(Json{{"v", io::kSchemaVersion}, {"world", io::world_to_json(w)},
                         {"backend", a.backend}, {"rows", arr}});
    return kExitOk;
  }
  out << describe(w.params) << " backend=" << a.backend << "\n";
  out << std::left << std::setw(8) << "op" << std::setw(8) << "reps" << std::setw(14)
      << "ms/op" << "queries/op\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(8) << experiments::to_string(row.op) << std::setw(8)
        << row.reps << std::setw(14) << std::fixed << std::setprecision(4)
        << row.total_ms / double(row.reps) << queries_line(row.per_op)
        << (row.uniform ? "" : " (varied)") << "\n";
  }
  out.unsetf(std::ios::floatfield);
  if (std::find(ops.begin(), ops.end(), BenchOp::kGen) != ops.end())
    out << "note: " << gen_note << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"osslab: simulated one-shot signatures over classical oracles"};
  app.name("osslab");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output on stdout");
  app.fallthrough();

  auto* world = app.add_subcommand("world", "create or inspect a world file");
  world->require_subcommand(1);
  WorldNew wn;
  auto* world_new = world->add_subcommand("new", "write a new world");
  world_new->add_option("--lambda", wn.lambda, "derive n, r, l, s from lambda (>= 2)");
  world_new->add_option("--n", wn.n);
  world_new->add_option("--r", wn.r);
  world_new->add_option("--l", wn.l);
  world_new->add_option("--s", wn.s, "bloat dimension");
  world_new->add_option("--variant", wn.variant, "standard|incompressible|bloated|original");
  world_new->add_option("--perm-mode", wn.perm_mode, "explicit_table|feistel");
  world_new->add_option("--seed", wn.seed, "64 hex digits (random if omitted)");
  world_new->add_option("--out", wn.out, "output file (stdout if omitted)");
  std::string show_path;
  auto* world_show = world->add_subcommand("show", "describe a world file");
  world_show->add_option("--world", show_path)->required();

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "generate a key pair");
  gen_cmd->add_option("--world", ga.world)->required();
  gen_cmd->add_option("--seed", ga.seed, "experiment seed (random if omitted)");
  gen_cmd->add_option("--backend", ga.backend, "statevector|symbolic");
  gen_cmd->add_option("--pk-out", ga.pk_out)->required();
  gen_cmd->add_option("--sk-out", ga.sk_out, "TEST-ONLY serialized symbolic key");
  gen_cmd->add_flag("--unsafe-test-io", ga.unsafe_test_io);
  gen_cmd->add_option("--sig-out", ga.sig_out, "sign in-process and write the signature");
  ga.message.add_to(gen_cmd);

  SignArgs sa;
  auto* sign_cmd = app.add_subcommand("sign", "sign once with a serialized key");
  sign_cmd->add_option("--sk", sa.sk)->required();
  sign_cmd->add_option("--seed", sa.seed);
  sign_cmd->add_option("--sig-out", sa.sig_out)->required();
  sign_cmd->add_flag("--unsafe-test-io", sa.unsafe_test_io);
  sa.message.add_to(sign_cmd);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "verify a signature (exit 0 accept, 1 reject)");
  verify_cmd->add_option("--pk", va.pk)->required();
  verify_cmd->add_option("--sig", va.sig)->required();
  va.message.add_to(verify_cmd);

  ExperimentArgs ea;
  auto* exp_cmd = app.add_subcommand("experiments", "run experiment suites");
  exp_cmd->add_option("--suite", ea.suite, "suite name or all");
  exp_cmd->add_option("--trials", ea.trials, "0 keeps each suite's default");
  exp_cmd->add_option("--seed", ea.seed, "experiment seed (zero seed if omitted)");
  exp_cmd->add_option("--threads", ea.threads);
  exp_cmd->add_option("--out", ea.out_dir, "directory for JSON reports");

  DistinguisherArgs da;
  auto* dist_cmd = app.add_subcommand("distinguisher", "collapsing distinguisher experiment");
  dist_cmd->add_option("--n", da.n);
  dist_cmd->add_option("--r", da.r);
  dist_cmd->add_option("--case", da.which, "hash-only|hash-and-first-bit");
  dist_cmd->add_option("--trials", da.trials);
  dist_cmd->add_option("--seed", da.seed);
  dist_cmd->add_option("--threads", da.threads);
  dist_cmd->add_option("--out", da.out_dir, "directory for the JSON report");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "time operations and count oracle queries");
  bench_cmd->add_option("--world", ba.world)->required();
  bench_cmd->add_option("--op", ba.op, "gen|sign|verify|all");
  bench_cmd->add_option("--reps", ba.reps);
  bench_cmd->add_option("--backend", ba.backend);
  bench_cmd->add_option("--seed", ba.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (world_new->parsed()) return cmd_world_new(wn, json, out, err);
    if (world_show->parsed()) return cmd_world_show(show_path, json, out);
    if (gen_cmd->parsed()) return cmd_gen(ga, json, out, err);
    if (sign_cmd->parsed()) return cmd_sign(sa, json, out, err);
    if (verify_cmd->parsed()) return cmd_verify(va, json, out);
    if (exp_cmd->parsed()) return cmd_experiments(ea, json, out, err);
    if (dist_cmd->parsed()) return cmd_distinguisher(da, json, out, err);
    if (bench_cmd->parsed()) return cmd_bench(ba, json, out);
  } catch (const OneShotViolation& e) {
    err << "error: one-shot violation: " << e.what() << "\n";
    return kExitOneShot;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitReject;
  }
  return kExitUsage;
}

}  // namespace osslab::cli
