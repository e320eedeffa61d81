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

#include "msagg/rates.h"

#include "gtest/gtest.h"
#include "msagg/combinatorics.h"
#include "msagg/status_macros.h"
#include "test_util.h"

namespace msagg {
namespace {

SecurityAnalysis Synthetic(int sbar, int a_star, int e_star, int q_size) {
  SecurityAnalysis a;
  for (int i = 1; i <= sbar; ++i) a.total_set.push_back({1, i});
  a.a_star = a_star;
  a.e_star = e_star;
  for (int i = 1; i <= q_size; ++i) a.q_set.push_back({2, i});
  return a;
}

TEST(RegimeTest, Names) {
  for (Regime r : {Regime::kCase1, Regime::kCase2, Regime::kCase3, Regime::kRemaining}) {
    absl::StatusOr<Regime> back = RegimeFromName(RegimeName(r));
    ASSERT_TRUE(back.ok());
    EXPECT_EQ(*back, r);
  }
  EXPECT_EQ(RegimeName(Regime::kRemaining), "T2_REMAINING");
  EXPECT_EQ(RegimeName(Regime::kCase2), "T1_CASE2");
  EXPECT_FALSE(RegimeFromName("T3").ok());
}

TEST(RegimeTest, DecisionTable) {
  const int k = 6;
  EXPECT_EQ(*ClassifyRegime(Synthetic(4, 4, 6, 6), k), Regime::kCase1);
  EXPECT_EQ(*ClassifyRegime(Synthetic(4, 3, 5, 0), k), Regime::kCase2);
  EXPECT_EQ(*ClassifyRegime(Synthetic(4, 4, 3, 5), k), Regime::kCase3);
  EXPECT_EQ(*ClassifyRegime(Synthetic(4, 4, 3, 6), k), Regime::kRemaining);
  EXPECT_TRUE(HasKind(ClassifyRegime(Synthetic(4, 5, 3, 0), k).status(),
                      "InternalInconsistency"));
}

TEST(KeyRateBoundsTest, Values) {
  const int k = 6;
  absl::StatusOr<RateReport> r = KeyRateBounds(Synthetic(4, 4, 6, 6), k, std::nullopt);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->key_rate_lower, 5);
  EXPECT_EQ(r->key_rate_upper, 5);
  EXPECT_TRUE(r->exact);
  EXPECT_EQ(r->r_x_min, 1);
  EXPECT_EQ(r->r_y_min, 1);

  r = KeyRateBounds(Synthetic(4, 3, 2, 0), k, std::nullopt);
  EXPECT_EQ(r->key_rate_lower, 2);
  EXPECT_EQ(r->key_rate_upper, 2);

  r = KeyRateBounds(Synthetic(4, 4, 3, 6), k, Rational(3, 2));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->regime, Regime::kRemaining);
  EXPECT_EQ(r->key_rate_lower, 3);
  EXPECT_EQ(r->key_rate_upper, Rational(9, 2));
  EXPECT_FALSE(r->exact);

  EXPECT_TRUE(HasKind(KeyRateBounds(Synthetic(4, 4, 3, 6), k, std::nullopt).status(),
                      "MissingBStar"));
}

TEST(KeyRateBoundsTest, Examples) {
  Instance one = testing::LoadExample(1);
  absl::StatusOr<RateReport> r =
      KeyRateBounds(Analyze(one), one.topology.total_users(), std::nullopt);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->regime, Regime::kCase2);
  EXPECT_EQ(r->key_rate_lower, 2);
  EXPECT_TRUE(r->exact);

  Instance two = testing::LoadExample(2);
  r = KeyRateBounds(Analyze(two), two.topology.total_users(), Rational(3, 2));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->regime, Regime::kRemaining);
  EXPECT_EQ(r->key_rate_lower, 2);
  EXPECT_EQ(r->key_rate_upper, Rational(7, 2));
}

TEST(KeyRateBoundsTest, EveryRandomInstanceClassifies) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Instance in = testing::RandomInstance(seed);
    SecurityAnalysis a = Analyze(in);
    const int k = in.topology.total_users();
    absl::StatusOr<Regime> regime = ClassifyRegime(a, k);
    ASSERT_TRUE(regime.ok()) << seed << " " << regime.status();
    absl::StatusOr<RateReport> r = KeyRateBounds(a, k, Rational(1));
    ASSERT_TRUE(r.ok());
    EXPECT_LE(r->key_rate_lower, r->key_rate_upper);
    EXPECT_LE(r->key_rate_lower, k - 1);
  }
}

}  // namespace
}  // namespace msagg
