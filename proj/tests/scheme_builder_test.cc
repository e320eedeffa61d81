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

#include "msagg/scheme_builder.h"

#include <bit>

#include "gtest/gtest.h"
#include "msagg/combinatorics.h"
#include "msagg/lp.h"
#include "msagg/pipeline.h"
#include "msagg/status_macros.h"
#include "test_util.h"

namespace msagg {
namespace {

UserMask NonzeroMask(const KeyScheme& s) {
  UserMask out = 0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (!s.coeffs[i].IsZero()) out |= UserMask{1} << i;
  }
  return out;
}

TEST(FieldChoiceTest, FallbackIsFirstPrimeAboveTwoToTwenty) {
  EXPECT_EQ(kFallbackFieldStart, *SmallestPrimeAtLeast(std::uint64_t{1} << 20));
}

TEST(FieldChoiceTest, BoundsForExamples) {
  Instance one = testing::LoadExample(1);
  SecurityAnalysis a1 = Analyze(one);
  // e* C(|S-bar|, e*) = 2 * 3 = 6.
  EXPECT_EQ(AutoFieldModulus(Regime::kCase2, a1, 7, nullptr), 7u);
  // e* C(|S-bar| + 1, e*) = 2 * 6 = 12.
  EXPECT_EQ(AutoFieldModulus(Regime::kCase3, a1, 7, nullptr), 13u);
  EXPECT_EQ(AutoFieldModulus(Regime::kCase1, a1, 7, nullptr), 2u);

  Instance two = testing::LoadExample(2);
  SecurityAnalysis a2 = Analyze(two);
  absl::StatusOr<LpSolution> lp = SolveLp(*BuildLp(two, a2));
  ASSERT_TRUE(lp.ok());
  // d = p-bar + e* q-bar = 7, d C(K q-bar, d) = 7 * C(16, 7) = 80080.
  EXPECT_EQ(AutoFieldModulus(Regime::kRemaining, a2, 8, &*lp), 80107u);
  EXPECT_EQ(AutoFieldModulus(Regime::kRemaining, a2, 8, nullptr), std::nullopt);
}

TEST(InjectedSchemeTest, FirstExampleKeysAreAccepted) {
  Instance in = testing::LoadExample(1);
  SecurityAnalysis a = Analyze(in);
  KeyScheme s = testing::LoadExampleKeys(1, in);
  EXPECT_EQ(s.field.modulus(), 5u);
  EXPECT_TRUE(CheckInjectedScheme(in, a, s, nullptr).ok())
      << CheckInjectedScheme(in, a, s, nullptr);
}

TEST(InjectedSchemeTest, SecondExampleKeysAreAcceptedWithRanks) {
  Instance in = testing::LoadExample(2);
  SecurityAnalysis a = Analyze(in);
  absl::StatusOr<LpSolution> lp = SolveLp(*BuildLp(in, a));
  ASSERT_TRUE(lp.ok());
  KeyScheme s = testing::LoadExampleKeys(2, in);
  EXPECT_TRUE(CheckInjectedScheme(in, a, s, &*lp).ok())
      << CheckInjectedScheme(in, a, s, &*lp);
  std::vector<int> ranks;
  for (const FMatrix& c : s.coeffs) ranks.push_back(Rank(s.field, c));
  EXPECT_EQ(ranks, (std::vector<int>{2, 0, 1, 1, 2, 2, 0, 1}));
}

TEST(InjectedSchemeTest, Rejections) {
  Instance in = testing::LoadExample(1);
  SecurityAnalysis a = Analyze(in);
  const KeyScheme good = testing::LoadExampleKeys(1, in);

  KeyScheme s = good;
  s.regime = Regime::kCase3;
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "WrongRegime"));

  s = good;
  s.claimed_rate = 3;
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "RateMismatch"));

  // Z_{1,3} := Z_{1,1}, Z_{2,1} := -2 Z_{1,1}: zero-sum but rank 1.
  s = good;
  s.coeffs[in.topology.IndexOf({1, 3})] = FMatrix::FromRows({{1, 0}});
  s.coeffs[in.topology.IndexOf({2, 1})] = FMatrix::FromRows({{3, 0}});
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "IndependenceViolation"));

  s = good;
  s.coeffs[0].at(0, 0) = 2;
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "ZeroSumViolation"));

  s = good;
  s.coeffs[0] = FMatrix(1, 3);
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "MalformedScheme"));

  s = good;
  s.coeffs[0].at(0, 0) = 7;  // not reduced mod 5
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, nullptr), "MalformedScheme"));
}

TEST(InjectedSchemeTest, SecondExampleRankMutation) {
  Instance in = testing::LoadExample(2);
  SecurityAnalysis a = Analyze(in);
  absl::StatusOr<LpSolution> lp = SolveLp(*BuildLp(in, a));
  KeyScheme s = testing::LoadExampleKeys(2, in);
  // Give Z_{1,2} the column of N_1 and take it back from Z_{1,1}: still
  // zero-sum, but (1,2) now has rank 1 where the allocation says 0.
  int i12 = in.topology.IndexOf({1, 2});
  s.coeffs[i12].at(0, 0) = 1;
  s.coeffs[0].at(0, 0) = s.field.Sub(s.coeffs[0].at(0, 0), 1);
  EXPECT_TRUE(HasKind(CheckInjectedScheme(in, a, s, &*lp), "IndependenceViolation"));
}

TEST(BuilderErrorsTest, WrongRegimeAndMissingInputs) {
  Instance one = testing::LoadExample(1);
  SecurityAnalysis a1 = Analyze(one);
  Rng rng(1);
  EXPECT_TRUE(HasKind(BuildCase1(one, a1).status(), "WrongRegime"));
  EXPECT_TRUE(HasKind(BuildCase3(one, a1, rng).status(), "WrongRegime"));

  Instance two = testing::LoadExample(2);
  SecurityAnalysis a2 = Analyze(two);
  EXPECT_TRUE(HasKind(BuildScheme(two, a2, nullptr, rng).status(), "MissingBStar"));
  EXPECT_TRUE(HasKind(OutsideUser(two, a2).status(), "NoOutsideUser"));
  EXPECT_TRUE(HasKind(BuildCase2(two, a2, rng).status(), "WrongRegime"));
}

TEST(BuilderErrorsTest, RetriesExhaustedInTinyField) {
  // e* = 1 with three keyed users: over F_2 the anchor key is always zero.
  Instance in = testing::MakeInstance(
      {2, 2, 2}, {UserSet{{1, 1}}, UserSet{{2, 1}}, UserSet{{3, 1}}}, {});
  SecurityAnalysis a = Analyze(in);
  ASSERT_EQ(*ClassifyRegime(a, 6), Regime::kCase2);
  ASSERT_EQ(a.e_star, 1);
  Rng rng(1);
  BuildOptions options;
  options.field_modulus = 2;
  options.retry_cap = 8;
  EXPECT_TRUE(HasKind(BuildCase2(in, a, rng, options).status(), "RetriesExhausted"));
  options.field_modulus = 3;
  options.retry_cap = 64;
  EXPECT_TRUE(BuildCase2(in, a, rng, options).ok());
}

TEST(BuilderTest, FieldPrecedence) {
  Instance in = testing::LoadExample(1);
  SecurityAnalysis a = Analyze(in);
  Rng rng(4);
  absl::StatusOr<KeyScheme> s = BuildCase2(in, a, rng);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->field.modulus(), 7u);
  in.field_modulus = 11;
  s = BuildCase2(in, a, rng);
  EXPECT_EQ(s->field.modulus(), 11u);
  s = BuildCase2(in, a, rng, {.field_modulus = 13});
  EXPECT_EQ(s->field.modulus(), 13u);
}

TEST(BuilderTest, DeterministicInSeed) {
  Instance in = testing::LoadExample(2);
  SecurityAnalysis a = Analyze(in);
  absl::StatusOr<LpSolution> lp = SolveLp(*BuildLp(in, a));
  Rng r1(99), r2(99), r3(100);
  KeyScheme s1 = *BuildScheme(in, a, &*lp, r1);
  KeyScheme s2 = *BuildScheme(in, a, &*lp, r2);
  KeyScheme s3 = *BuildScheme(in, a, &*lp, r3);
  EXPECT_EQ(s1.coeffs, s2.coeffs);
  EXPECT_NE(s1.coeffs, s3.coeffs);
}

TEST(BuilderTest, RandomInstancesSatisfyStructure) {
  int seen[4] = {0, 0, 0, 0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SCOPED_TRACE(seed);
    Instance in = testing::RandomInstance(seed);
    SecurityAnalysis a = Analyze(in);
    const int k = in.topology.total_users();
    absl::StatusOr<RateContext> ctx = ComputeRates(in, a);
    ASSERT_TRUE(ctx.ok()) << ctx.status();
    const LpSolution* lp = ctx->lp_solution ? &*ctx->lp_solution : nullptr;
    Rng rng = Rng(in.seed).Split(kSchemeStream);
    absl::StatusOr<KeyScheme> s = BuildScheme(in, a, lp, rng);
    ASSERT_TRUE(s.ok()) << s.status();
    ++seen[static_cast<int>(s->regime)];

    EXPECT_TRUE(CoefficientSum(*s).IsZero());
    EXPECT_TRUE(CheckSchemeConditions(in, a, *s, lp).ok());
    EXPECT_TRUE(CheckInjectedScheme(in, a, *s, lp).ok());
    EXPECT_EQ(s->claimed_rate, *AchievableRate(a, k, lp));
    EXPECT_EQ(s->claimed_rate, ctx->rate.key_rate_upper);

    const UserMask total = in.topology.MaskOf(a.total_set);
    switch (s->regime) {
      case Regime::kCase1:
        EXPECT_EQ(s->source_dim, k - 1);
        EXPECT_EQ(NonzeroMask(*s), in.topology.FullMask());
        break;
      case Regime::kCase2:
        EXPECT_EQ(s->source_dim, a.e_star);
        EXPECT_EQ(NonzeroMask(*s) & ~total, 0u);
        break;
      case Regime::kCase3: {
        EXPECT_EQ(s->source_dim, a.e_star);
        UserId outside = *OutsideUser(in, a);
        EXPECT_EQ(NonzeroMask(*s) & ~total,
                  UserMask{1} << in.topology.IndexOf(outside));
        break;
      }
      case Regime::kRemaining:
        ASSERT_NE(lp, nullptr);
        EXPECT_EQ(mpz_class(s->block_len), lp->common_denominator);
        EXPECT_EQ(mpz_class(s->source_dim),
                  lp->p_bar + a.e_star * lp->common_denominator);
        break;
    }
  }
  for (int r = 0; r < 4; ++r) EXPECT_GT(seen[r], 0) << "regime " << r;
}

}  // namespace
}  // namespace msagg
