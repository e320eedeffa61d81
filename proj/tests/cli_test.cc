/*
 * Copyright 2026 The msagg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "msagg/model.h"
#include "test_util.h"

namespace msagg {
namespace {

using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
Result RunCli(const std::string& args) {
  std::string cmd = absl::StrCat(MSAGG_CLI_PATH, " ", args, " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Example(int which) {
  return testing::DataPath(absl::StrCat("example", which, ".json"));
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

TEST(CliTest, ExamplesRunCleanly) {
  for (int which : {1, 2}) {
    for (const char* cmd : {"validate", "analyze", "rate", "lp", "scheme", "verify"}) {
      Result r = RunCli(absl::StrCat(cmd, " ", Example(which)));
      EXPECT_EQ(r.code, 0) << cmd << " " << which;
      EXPECT_FALSE(r.out.empty());
    }
    EXPECT_EQ(RunCli(absl::StrCat("simulate --trials 10 ", Example(which))).code, 0);
    EXPECT_EQ(RunCli(absl::StrCat("pipeline --trials 10 ", Example(which))).code, 0);
  }
}

TEST(CliTest, JsonOutputs) {
  Result r = RunCli(absl::StrCat("rate --json ", Example(2)));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["regime"], "T2_REMAINING");
  EXPECT_EQ(j["R_Z_lower"], "2");

  r = RunCli(absl::StrCat("lp --json ", Example(2)));
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_EQ(j["applicable"], true);

  r = RunCli(absl::StrCat("lp --json ", Example(1)));
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_EQ(j["applicable"], false);
  EXPECT_EQ(j["regime"], "T1_CASE2");
  r = RunCli(absl::StrCat("lp ", Example(1)));
  EXPECT_TRUE(absl::StrContains(r.out, "no key allocation program")) << r.out;

  r = RunCli(absl::StrCat("pipeline --json --trials 5 --seed 3 ", Example(2)));
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["security"]["triples_checked"], 672);
}

TEST(CliTest, PipelineIsReproducible) {
  std::string args = absl::StrCat("pipeline --json --trials 5 --seed 11 ", Example(1));
  json a = json::parse(RunCli(args).out), b = json::parse(RunCli(args).out);
  a.erase("timings_ms");
  b.erase("timings_ms");
  EXPECT_EQ(a, b);
}

TEST(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(RunCli(absl::StrCat("validate ", WriteTemp("bad.json", "{\"servers\": [3,"))).code, 2);
  EXPECT_EQ(RunCli(absl::StrCat("analyze ", WriteTemp("neg.json",
                                                   "{\"servers\": [0, 1, 1], "
                                                   "\"security_generators\": [], "
                                                   "\"collusion_generators\": []}")))
                .code,
            2);
  EXPECT_EQ(RunCli("validate /nonexistent/file.json").code, 2);
  EXPECT_EQ(RunCli("frobnicate").code, 2);
  EXPECT_EQ(RunCli("").code, 2);
  EXPECT_EQ(RunCli(absl::StrCat("simulate --trials -3 ", Example(1))).code, 2);
  EXPECT_EQ(RunCli(absl::StrCat("scheme --inject ", WriteTemp("k.json", "[1]"), " ",
                             Example(1)))
                .code,
            2);
  EXPECT_EQ(RunCli("--help").code, 0);
}

TEST(CliTest, InjectedKeys) {
  std::string keys = testing::DataPath("example2_keys.json");
  Result r = RunCli(absl::StrCat("pipeline --json --trials 20 --inject ", keys, " ", Example(2)));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["scheme"]["q"], 5);
  EXPECT_EQ(j["scheme"]["rate"], "7/2");

  // Keys for the wrong instance fail a scheme condition.
  r = RunCli(absl::StrCat("verify --inject ", testing::DataPath("example1_keys.json"), " ",
                       Example(2)));
  EXPECT_EQ(r.code, 3);
}

TEST(CliTest, SchemeReusesAnalysis) {
  Result a = RunCli(absl::StrCat("analyze --json ", Example(2)));
  ASSERT_EQ(a.code, 0);
  std::string path = WriteTemp("analysis.json", a.out);
  Result s1 = RunCli(absl::StrCat("scheme --json --analysis ", path, " ", Example(2)));
  Result s2 = RunCli(absl::StrCat("scheme --json ", Example(2)));
  ASSERT_EQ(s1.code, 0);
  EXPECT_EQ(json::parse(s1.out), json::parse(s2.out));

  json tampered = json::parse(a.out);
  tampered["e_star"] = 3;
  path = WriteTemp("tampered.json", tampered.dump());
  EXPECT_NE(RunCli(absl::StrCat("scheme --analysis ", path, " ", Example(2))).code, 0);
}

TEST(CliTest, GeneratedInstancesValidate) {
  for (int seed = 0; seed < 5; ++seed) {
    Result g = RunCli(absl::StrCat("gen --servers 4 --max-users 2 --seed ", seed));
    ASSERT_EQ(g.code, 0);
    absl::StatusOr<Instance> in = ParseInstance(g.out);
    ASSERT_TRUE(in.ok()) << in.status();
    EXPECT_EQ(in->topology.server_count(), 4);
    std::string path = WriteTemp(absl::StrCat("gen", seed, ".json"), g.out);
    EXPECT_EQ(RunCli(absl::StrCat("pipeline --trials 3 ", path)).code, 0);
  }
  EXPECT_EQ(RunCli("gen --servers 3 --max-users 2 --seed 1").out,
            RunCli("gen --servers 3 --max-users 2 --seed 1").out);
  EXPECT_EQ(RunCli("gen --servers 2 --max-users 2").code, 2);
}

}  // namespace
}  // namespace msagg
