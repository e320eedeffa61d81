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

#include "msagg/rational.h"

#include "gtest/gtest.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

TEST(RationalTest, ToString) {
  EXPECT_EQ(RationalToString(Rational(3, 2)), "3/2");
  EXPECT_EQ(RationalToString(Rational(4, 2)), "2");
  EXPECT_EQ(RationalToString(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(RationalToString(Rational(0)), "0");
}

TEST(RationalTest, ParseRoundTrip) {
  for (const char* text : {"0", "7", "-7", "3/2", "-1/3", "12345678901234567890/7"}) {
    absl::StatusOr<Rational> r = ParseRational(text);
    ASSERT_TRUE(r.ok()) << text;
    EXPECT_EQ(RationalToString(*r), text);
  }
  absl::StatusOr<Rational> r = ParseRational("6/4");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, Rational(3, 2));
}

TEST(RationalTest, ParseRejects) {
  for (const char* text : {"", "x", "1/0", "1/", "/2", "1.5", "1/2/3", " 1"}) {
    EXPECT_TRUE(HasKind(ParseRational(text).status(), "ParseError")) << text;
  }
}

TEST(RationalTest, CommonDenominator) {
  EXPECT_EQ(CommonDenominator({}), 1);
  EXPECT_EQ(CommonDenominator({Rational(1, 2), Rational(1, 3), Rational(5)}), 6);
  EXPECT_EQ(CommonDenominator({Rational(1, 4), Rational(3, 8)}), 8);
}

}  // namespace
}  // namespace msagg
