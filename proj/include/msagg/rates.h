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

#ifndef MSAGG_RATES_H_
#define MSAGG_RATES_H_

#include <optional>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/statusor.h"
#include "msagg/combinatorics.h"
#include "msagg/rational.h"

namespace msagg {

enum class Regime {
  kCase1,        // e* = K
  kCase2,        // e* <= K-1, a* <= |S-bar|-1
  kCase3,        // e* <= K-1, a* = |S-bar|, |Q| <= K-1
  kRemaining,    // e* <= K-1, a* = |S-bar|, |Q| = K
};

absl::string_view RegimeName(Regime regime);
absl::StatusOr<Regime> RegimeFromName(absl::string_view name);

// InternalInconsistency when no condition matches.
absl::StatusOr<Regime> ClassifyRegime(const SecurityAnalysis& analysis,
                                      int total_users);

struct RateReport {
  Regime regime = Regime::kCase1;
  Rational r_x_min = 1;
  Rational r_y_min = 1;
  Rational key_rate_lower;
  Rational key_rate_upper;
  bool exact = true;
};

// `b_star` is required for the remaining regime (MissingBStar) and ignored
// otherwise.
absl::StatusOr<RateReport> KeyRateBounds(const SecurityAnalysis& analysis,
                                         int total_users,
                                         std::optional<Rational> b_star);

}  // namespace msagg

#endif  // MSAGG_RATES_H_
