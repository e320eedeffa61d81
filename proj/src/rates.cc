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

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {

absl::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kCase1:
      return "T1_CASE1";
    case Regime::kCase2:
      return "T1_CASE2";
    case Regime::kCase3:
      return "T1_CASE3";
    case Regime::kRemaining:
      return "T2_REMAINING";
  }
  return "?";
}

absl::StatusOr<Regime> RegimeFromName(absl::string_view name) {
  for (Regime r : {Regime::kCase1, Regime::kCase2, Regime::kCase3,
                   Regime::kRemaining}) {
    if (RegimeName(r) == name) return r;
  }
  return KindError(absl::StatusCode::kInvalidArgument, "ParseError",
                   absl::StrCat("unknown regime '", name, "'"));
}

absl::StatusOr<Regime> ClassifyRegime(const SecurityAnalysis& analysis,
                                      int total_users) {
  const int k = total_users;
  const int total = static_cast<int>(analysis.total_set.size());
  const int q = static_cast<int>(analysis.q_set.size());
  if (analysis.e_star == k) return Regime::kCase1;
  if (analysis.e_star <= k - 1) {
    if (analysis.a_star <= total - 1) return Regime::kCase2;
    if (analysis.a_star == total && q <= k - 1) return Regime::kCase3;
    if (analysis.a_star == total && q == k) return Regime::kRemaining;
  }
  return KindError(
      absl::StatusCode::kInternal, "InternalInconsistency",
      absl::StrCat("no regime matches e*=", analysis.e_star, " a*=",
                   analysis.a_star, " |S_bar|=", total, " |Q|=", q, " K=", k));
}

absl::StatusOr<RateReport> KeyRateBounds(const SecurityAnalysis& analysis,
                                         int total_users,
                                         std::optional<Rational> b_star) {
  MSAGG_ASSIGN_OR_RETURN(Regime regime, ClassifyRegime(analysis, total_users));
  RateReport out;
  out.regime = regime;
  switch (regime) {
    case Regime::kCase1:
      out.key_rate_lower = out.key_rate_upper = total_users - 1;
      break;
    case Regime::kCase2:
    case Regime::kCase3:
      out.key_rate_lower = out.key_rate_upper = analysis.e_star;
      break;
    case Regime::kRemaining:
      if (!b_star.has_value()) {
        return KindError(absl::StatusCode::kFailedPrecondition, "MissingBStar",
                         "remaining regime needs the LP optimum b*");
      }
      out.key_rate_lower = analysis.e_star;
      out.key_rate_upper = Rational(analysis.e_star) + *b_star;
      out.exact = false;
      break;
  }
  return out;
}

}  // namespace msagg
