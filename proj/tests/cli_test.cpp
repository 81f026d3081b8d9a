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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "osslab/io.hpp"

namespace osslab::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSeed(64, 'c');
const std::string kSeed2 = std::string(63, '0') + "7";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("osslab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run_cmd(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::string read(const std::string& name) const { return io::read_file(path(name)); }

  void make_world(const std::string& name, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"world", "new", "--seed", kSeed, "--out", path(name)};
    args.insert(args.end(), extra.begin(), extra.end());
    ASSERT_EQ(run_cmd(args), kExitOk) << err_.str();
  }

  void gen_with_sk(const std::string& world) {
    ASSERT_EQ(run_cmd({"gen", "--world", path(world), "--seed", kSeed2, "--pk-out",
                       path("pk.json"), "--sk-out", path("sk.json"), "--unsafe-test-io"}),
              kExitOk)
        << err_.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, WorldNewWritesVersionedJson) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  const auto j = io::parse(read("w.json"));
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["params"]["n"], 8);
  EXPECT_EQ(j["params"]["perm_mode"], "explicit_table");
  EXPECT_EQ(j["seed"], kSeed);
  // Round trip is byte-identical.
  EXPECT_EQ(io::dump(io::world_to_json(io::world_from_json(j))), read("w.json"));
}

TEST_F(CliTest, WorldNewFromLambdaWarnsButWrites) {
  make_world("w.json", {"--lambda", "2"});
  const auto w = io::world_from_json(io::parse(read("w.json")));
  EXPECT_EQ(w.params.n, 82u);
  EXPECT_EQ(w.params.r, 32u);
  EXPECT_EQ(w.params.s, 32u);
  EXPECT_EQ(w.params.l, 2u);
  EXPECT_EQ(w.params.lambda, 2u);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
  EXPECT_EQ(run_cmd({"world", "show", "--world", path("w.json")}), kExitOk);
  EXPECT_NE(out_.str().find("buildable no"), std::string::npos);
}

TEST_F(CliTest, WorldNewRejectsBadShapes) {
  EXPECT_EQ(run_cmd({"world", "new", "--n", "4", "--r", "3", "--l", "2", "--seed", kSeed}),
            kExitUsage);
  EXPECT_EQ(run_cmd({"world", "new", "--lambda", "1", "--seed", kSeed}), kExitUsage);
  EXPECT_EQ(run_cmd({"world", "new", "--lambda", "2", "--n", "8", "--seed", kSeed}), kExitUsage);
  EXPECT_EQ(run_cmd({"world", "new", "--n", "8", "--r", "3", "--l", "2", "--seed", "zz"}),
            kExitUsage);
  EXPECT_EQ(run_cmd({"world", "new", "--n", "8", "--r", "3", "--l", "2", "--variant", "x"}),
            kExitUsage);
}

TEST_F(CliTest, RejectsOtherSchemaVersions) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  auto j = io::parse(read("w.json"));
  j["v"] = 2;
  io::write_file_atomic(path("w2.json"), io::dump(j));
  EXPECT_EQ(run_cmd({"world", "show", "--world", path("w2.json")}), kExitUsage);
  io::write_file_atomic(path("junk.json"), "{not json");
  EXPECT_EQ(run_cmd({"world", "show", "--world", path("junk.json")}), kExitUsage);
  EXPECT_EQ(run_cmd({"world", "show", "--world", path("missing.json")}), kExitUsage);
}

TEST_F(CliTest, FullRoundTrip) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  gen_with_sk("w.json");
  EXPECT_EQ(run_cmd({"sign", "--sk", path("sk.json"), "--message", "10", "--sig-out",
                     path("sig.json"), "--unsafe-test-io", "--seed", kSeed}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"), "--message",
                     "10"}),
            kExitOk);
  EXPECT_EQ(out_.str(), "accept\n");
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"), "--message",
                     "11"}),
            kExitReject);
}

TEST_F(CliTest, FlippedMessageBitRejects) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  ASSERT_EQ(run_cmd({"gen", "--world", path("w.json"), "--seed", kSeed2, "--pk-out",
                     path("pk.json"), "--message", "01", "--sig-out", path("sig.json")}),
            kExitOk);
  auto j = io::parse(read("sig.json"));
  auto doc = io::signature_from_json(j);
  doc.sig.sigma.flip(1);
  io::write_file_atomic(path("bad.json"), io::dump(io::signature_to_json(doc)));
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"), "--message",
                     "01"}),
            kExitOk);
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("bad.json"), "--message",
                     "01"}),
            kExitReject);
}

TEST_F(CliTest, SecondSignIsOneShotViolation) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  gen_with_sk("w.json");
  const std::vector<std::string> sign_args{"sign", "--sk", path("sk.json"), "--message", "00",
                                           "--sig-out", path("sig.json"), "--unsafe-test-io"};
  ASSERT_EQ(run_cmd(sign_args), kExitOk);
  EXPECT_TRUE(io::parse(read("sk.json"))["consumed"].get<bool>());
  const std::string first = read("sig.json");
  EXPECT_EQ(run_cmd(sign_args), kExitOneShot);
  EXPECT_EQ(read("sig.json"), first);
}

TEST_F(CliTest, SecretKeyIoIsGated) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  EXPECT_EQ(run_cmd({"gen", "--world", path("w.json"), "--pk-out", path("pk.json"), "--sk-out",
                     path("sk.json")}),
            kExitUsage);
  EXPECT_EQ(run_cmd({"gen", "--world", path("w.json"), "--backend", "statevector", "--pk-out",
                     path("pk.json"), "--sk-out", path("sk.json"), "--unsafe-test-io"}),
            kExitUsage);
  EXPECT_FALSE(fs::exists(path("sk.json")));
  gen_with_sk("w.json");
  EXPECT_TRUE(io::parse(read("sk.json"))["test_only"].get<bool>());
  EXPECT_EQ(run_cmd({"sign", "--sk", path("sk.json"), "--message", "00", "--sig-out",
                     path("sig.json")}),
            kExitUsage);
}

TEST_F(CliTest, MalformedMessageIsUsageError) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  gen_with_sk("w.json");
  EXPECT_EQ(run_cmd({"sign", "--sk", path("sk.json"), "--message", "101", "--sig-out",
                     path("sig.json"), "--unsafe-test-io"}),
            kExitUsage);
  EXPECT_EQ(run_cmd({"sign", "--sk", path("sk.json"), "--message", "1x", "--sig-out",
                     path("sig.json"), "--unsafe-test-io"}),
            kExitUsage);
  // The key was not spent by the failed attempts.
  EXPECT_FALSE(io::parse(read("sk.json"))["consumed"].get<bool>());
}

TEST_F(CliTest, StatevectorInProcessSigning) {
  make_world("w.json", {"--n", "9", "--r", "3", "--l", "3"});
  ASSERT_EQ(run_cmd({"gen", "--world", path("w.json"), "--backend", "statevector", "--seed",
                     kSeed2, "--pk-out", path("pk.json"), "--message", "110", "--sig-out",
                     path("sig.json")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"), "--message",
                     "110"}),
            kExitOk);
}

TEST_F(CliTest, HashedMessageFiles) {
  make_world("w.json", {"--n", "14", "--r", "3", "--l", "8"});
  io::write_file_atomic(path("msg.bin"), std::string(5000, 'q'));
  io::write_file_atomic(path("other.bin"), std::string(5000, 'r'));
  ASSERT_EQ(run_cmd({"gen", "--world", path("w.json"), "--seed", kSeed2, "--pk-out",
                     path("pk.json"), "--message-file", path("msg.bin"), "--sig-out",
                     path("sig.json")}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(io::parse(read("sig.json"))["message_mode"], "hashed");
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"),
                     "--message-file", path("msg.bin")}),
            kExitOk);
  // A bit-string message does not match a hashed signature.
  EXPECT_EQ(run_cmd({"verify", "--pk", path("pk.json"), "--sig", path("sig.json"), "--message",
                     "00000000"}),
            kExitReject);
}

TEST_F(CliTest, IncompressibleRoundTrip) {
  make_world("w.json", {"--n", "10", "--r", "3", "--l", "3", "--variant", "incompressible"});
  gen_with_sk("w.json");
  ASSERT_EQ(run_cmd({"sign", "--sk", path("sk.json"), "--message", "01", "--sig-out",
                     path("sig.json"), "--unsafe-test-io"}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(run_cmd({"--json", "verify", "--pk", path("pk.json"), "--sig", path("sig.json"),
                     "--message", "01"}),
            kExitOk);
  const auto rec = io::parse(out_.str());
  EXPECT_EQ(rec["queries"]["Pinv"], 0);
  EXPECT_EQ(rec["queries"]["D0"], 1);
}

TEST_F(CliTest, OutputsAreDeterministic) {
  make_world("w.json", {"--n", "8", "--r", "3", "--l", "2"});
  std::vector<std::string> texts;
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run_cmd({"gen", "--world", path("w.json"), "--seed", kSeed2, "--pk-out",
                       path("pk.json"), "--message", "11", "--sig-out", path("sig.json")}),
              kExitOk);
    texts.push_back(read("pk.json") + read("sig.json"));
  }
  EXPECT_EQ(texts[0], texts[1]);
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run_cmd({"experiments", "--suite", "census", "--seed", kSeed, "--out",
                       path("r" + std::to_string(i))}),
              kExitOk);
  }
  EXPECT_EQ(read("r0/census.json"), read("r1/census.json"));
  EXPECT_FALSE(fs::exists(path("pk.json.tmp")));
}

TEST_F(CliTest, ExperimentsJsonAndUnknownSuite) {
  ASSERT_EQ(run_cmd({"--json", "experiments", "--suite", "queries"}), kExitOk);
  const auto arr = io::parse(out_.str());
  ASSERT_EQ(arr.size(), 1u);
  EXPECT_EQ(arr[0]["v"], 1);
  EXPECT_TRUE(arr[0]["pass"].get<bool>());
  EXPECT_EQ(run_cmd({"experiments", "--suite", "nope"}), kExitUsage);
}

TEST_F(CliTest, DistinguisherCommand) {
  ASSERT_EQ(run_cmd({"distinguisher", "--n", "6", "--r", "2", "--case", "hash-only", "--trials",
                     "500", "--out", path("d")}),
            kExitOk)
      << err_.str();
  const auto j = io::parse(read("d/distinguisher-hash-only.json"));
  EXPECT_EQ(j["metrics"][0]["estimate"], 1.0);
  EXPECT_EQ(run_cmd({"distinguisher", "--case", "other"}), kExitUsage);
}

TEST_F(CliTest, BenchQueryProfiles) {
  make_world("w.json", {"--n", "10", "--r", "3", "--l", "4"});
  ASSERT_EQ(run_cmd({"--json", "bench", "--world", path("w.json"), "--reps", "10"}), kExitOk);
  const auto j = io::parse(out_.str());
  const auto& rows = j["rows"];
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0]["op"], "gen");
  EXPECT_EQ(rows[0]["queries_per_op"]["P"], 0);
  EXPECT_EQ(rows[0]["queries_per_op"]["Pinv"], 0);
  EXPECT_TRUE(rows[0].contains("note"));
  EXPECT_EQ(rows[1]["queries_per_op"]["D"], 4);
  EXPECT_EQ(rows[2]["queries_per_op"]["Pinv"], 1);
  EXPECT_EQ(rows[2]["queries_per_op"]["P"], 0);
  EXPECT_EQ(rows[2]["queries_per_op"]["D"], 0);
  EXPECT_EQ(run_cmd({"bench", "--world", path("w.json"), "--op", "fly"}), kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cmd({}), kExitUsage);
  EXPECT_EQ(run_cmd({"gen"}), kExitUsage);
  EXPECT_EQ(run_cmd({"verify", "--pk", "x"}), kExitUsage);
  EXPECT_EQ(run_cmd({"--help"}), kExitOk);
}

}  // namespace
}  // namespace osslab::cli
