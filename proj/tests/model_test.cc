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

#include "msagg/model.h"

#include <algorithm>
#include <set>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "msagg/status_macros.h"
#include "test_util.h"

namespace msagg {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

UserSet U(std::initializer_list<std::pair<int, int>> users) {
  UserSet out;
  for (auto [s, v] : users) out.push_back({s, v});
  return out;
}

TEST(TopologyTest, FlatIndexIsLexicographic) {
  absl::StatusOr<Topology> t = Topology::Create({3, 2, 2});
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->total_users(), 7);
  EXPECT_EQ(t->IndexOf({1, 1}), 0);
  EXPECT_EQ(t->IndexOf({1, 3}), 2);
  EXPECT_EQ(t->IndexOf({2, 1}), 3);
  EXPECT_EQ(t->IndexOf({3, 2}), 6);
  for (int i = 0; i < 7; ++i) EXPECT_EQ(t->IndexOf(t->UserAt(i)), i);
  EXPECT_EQ(t->ServerMask(2), UserMask{0b0011000});
  EXPECT_EQ(t->FullMask(), UserMask{0b1111111});
  EXPECT_EQ(t->SetOf(t->MaskOf(U({{3, 1}, {1, 2}}))), U({{1, 2}, {3, 1}}));
  EXPECT_FALSE(t->Contains({2, 3}));
  EXPECT_FALSE(t->Contains({4, 1}));
  EXPECT_FALSE(t->Contains({0, 1}));
}

TEST(TopologyTest, RejectsBadShapes) {
  EXPECT_TRUE(HasKind(Topology::Create({1, 1}).status(), "BadTopology"));
  EXPECT_TRUE(HasKind(Topology::Create({1, 0, 1}).status(), "BadTopology"));
  EXPECT_TRUE(HasKind(Topology::Create({30, 30, 5}).status(), "BadTopology"));
  absl::StatusOr<Topology> full = Topology::Create({30, 30, 4});
  ASSERT_TRUE(full.ok());
  EXPECT_EQ(full->FullMask(), ~UserMask{0});
}

TEST(ClosureTest, EmptyFirstThenSizeThenLex) {
  absl::StatusOr<std::vector<UserSet>> c =
      ClosureOf({U({{2, 1}, {1, 1}}), U({{1, 2}})});
  ASSERT_TRUE(c.ok());
  EXPECT_THAT(*c, ElementsAre(UserSet{}, U({{1, 1}}), U({{1, 2}}), U({{2, 1}}),
                              U({{1, 1}, {2, 1}})));
}

TEST(ClosureTest, IsDownwardClosedAndMinimal) {
  std::vector<UserSet> gens = {U({{1, 1}, {1, 2}, {2, 1}}), U({{2, 1}, {3, 1}})};
  absl::StatusOr<std::vector<UserSet>> c = ClosureOf(gens);
  ASSERT_TRUE(c.ok());
  std::set<UserSet> expect;
  for (const UserSet& g : gens) {
    for (unsigned bits = 0; bits < (1u << g.size()); ++bits) {
      UserSet sub;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (bits >> i & 1) sub.push_back(g[i]);
      }
      expect.insert(sub);
    }
  }
  EXPECT_EQ(std::set<UserSet>(c->begin(), c->end()), expect);
  EXPECT_EQ(c->size(), expect.size());
  EXPECT_TRUE(std::is_sorted(c->begin(), c->end(), ClosureOrderLess));
}

TEST(ClosureTest, CapIsEnforced) {
  UserSet big;
  for (int v = 1; v <= 12; ++v) big.push_back({1, v});
  EXPECT_TRUE(HasKind(ClosureOf({big}, 1000).status(), "ClosureTooLarge"));
  EXPECT_TRUE(ClosureOf({big}, 4096).ok());
}

// Orderings listed with the first worked example.
TEST(ExampleInstanceTest, FirstExampleClosures) {
  Instance in = testing::LoadExample(1);
  EXPECT_EQ(in.topology.users_per_server(), (std::vector<int>{3, 2, 2}));
  EXPECT_THAT(in.security.closure,
              ElementsAre(UserSet{}, U({{1, 1}}), U({{2, 1}}), U({{1, 1}, {2, 1}})));
  ASSERT_EQ(in.collusion.size(), 16u);
  EXPECT_EQ(in.collusion.closure[5], U({{1, 2}, {2, 2}}));
  EXPECT_EQ(in.collusion.closure[10], U({{3, 1}, {3, 2}}));
  EXPECT_EQ(in.collusion.closure[11], U({{1, 2}, {2, 2}, {3, 1}}));
  EXPECT_EQ(in.collusion.closure[15], U({{1, 2}, {2, 2}, {3, 1}, {3, 2}}));
}

TEST(ExampleInstanceTest, SecondExampleClosures) {
  Instance in = testing::LoadExample(2);
  EXPECT_EQ(in.topology.total_users(), 8);
  ASSERT_EQ(in.security.size(), 8u);
  EXPECT_EQ(in.security.closure[7], U({{1, 1}, {2, 1}, {2, 2}}));
  ASSERT_EQ(in.collusion.size(), 28u);
  EXPECT_EQ(in.collusion.closure[1], U({{1, 2}}));
  EXPECT_EQ(in.collusion.closure[6], U({{3, 1}}));
  EXPECT_EQ(in.collusion.closure[7], U({{1, 2}, {1, 3}}));
  EXPECT_EQ(in.collusion.closure[20], U({{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(in.collusion.closure[21], U({{1, 2}, {1, 4}, {2, 3}}));
  EXPECT_EQ(in.collusion.closure[22], U({{1, 2}, {2, 3}, {3, 1}}));
  EXPECT_EQ(in.collusion.closure[27], U({{1, 3}, {1, 4}, {2, 1}, {3, 1}}));
}

TEST(ValidateTest, ErrorKinds) {
  RawInstance base{{2, 2, 2}, {U({{1, 1}})}, {U({{2, 1}})}, std::nullopt, 0};
  ASSERT_TRUE(ValidateInstance(base).ok());

  RawInstance r = base;
  r.security_generators = {U({{1, 3}})};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "UnknownUser"));

  r = base;
  r.collusion_generators = {U({{4, 1}})};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "UnknownUser"));

  r = base;
  r.security_generators = {UserSet{}};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "TrivialSecuritySystem"));
  r.security_generators = {};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "TrivialSecuritySystem"));

  r = base;
  r.collusion_generators = {U({{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}})};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "OversizedColluder"));
  r.collusion_generators = {U({{1, 1}, {1, 2}, {2, 1}, {2, 2}})};
  EXPECT_TRUE(ValidateInstance(r).ok());

  r = base;
  r.field_modulus = 9;
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "BadModulus"));
  r.field_modulus = 1;
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "BadModulus"));
  r.field_modulus = 11;
  EXPECT_TRUE(ValidateInstance(r).ok());

  r = base;
  r.servers = {2, 2};
  EXPECT_TRUE(HasKind(ValidateInstance(r).status(), "BadTopology"));

  r = base;
  UserSet wide;
  for (int v = 1; v <= 2; ++v) {
    for (int s = 1; s <= 3; ++s) wide.push_back({s, v});
  }
  r.security_generators = {wide};
  EXPECT_TRUE(HasKind(ValidateInstance(r, {.closure_cap = 32}).status(),
                      "ClosureTooLarge"));
}

TEST(ParseTest, MalformedInputsAreParseErrors) {
  for (const char* text : {
           "",
           "{",
           "[]",
           R"({"security_generators":[],"collusion_generators":[]})",
           R"({"servers":[1,"a",1],"security_generators":[],"collusion_generators":[]})",
           R"({"servers":[1,1,1],"collusion_generators":[]})",
           R"({"servers":[1,1,1],"security_generators":[[[1]]],"collusion_generators":[]})",
           R"({"servers":[1,1,1],"security_generators":[[1,1]],"collusion_generators":[]})",
           R"({"servers":[1,1,1],"security_generators":[[[1,1]]],"collusion_generators":[],"field_modulus":-3})",
           R"({"servers":[1,1,1],"security_generators":[[[1,1]]],"collusion_generators":[],"seed":"x"})",
       }) {
    absl::StatusOr<RawInstance> raw = ParseRawInstance(text);
    EXPECT_TRUE(HasKind(raw.status(), "ParseError")) << text << " -> " << raw.status();
  }
}

TEST(ParseTest, RoundTrip) {
  for (int which : {1, 2}) {
    Instance in = testing::LoadExample(which);
    absl::StatusOr<Instance> again = ParseInstance(SerializeInstance(in));
    ASSERT_TRUE(again.ok()) << again.status();
    EXPECT_EQ(*again, in);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance in = testing::RandomInstance(seed);
    absl::StatusOr<Instance> again = ParseInstance(SerializeInstance(in));
    ASSERT_TRUE(again.ok()) << again.status();
    EXPECT_EQ(*again, in);
    EXPECT_EQ(again->seed, in.seed);
  }
}

TEST(ParseTest, NullModulusAndDefaults) {
  absl::StatusOr<RawInstance> raw = ParseRawInstance(
      R"({"servers":[1,1,1],"security_generators":[[[1,1]]],"collusion_generators":[],"field_modulus":null})");
  ASSERT_TRUE(raw.ok());
  EXPECT_FALSE(raw->field_modulus.has_value());
  EXPECT_EQ(raw->seed, 0u);
}

TEST(ParseTest, UnknownUserMessageNamesUser) {
  absl::StatusOr<Instance> in = ParseInstance(
      R"({"servers":[1,1,1],"security_generators":[[[2,5]]],"collusion_generators":[]})");
  EXPECT_TRUE(HasKind(in.status(), "UnknownUser"));
  EXPECT_THAT(std::string(in.status().message()), HasSubstr("(2,5)"));
}

}  // namespace
}  // namespace msagg
