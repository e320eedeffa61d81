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

#ifndef MSAGG_SCHEME_BUILDER_H_
#define MSAGG_SCHEME_BUILDER_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "msagg/combinatorics.h"
#include "msagg/key_scheme.h"
#include "msagg/lp.h"
#include "msagg/rng.h"

namespace msagg {

struct BuildOptions {
  // Fixed field; when absent the builder picks one (see AutoFieldModulus).
  std::optional<std::uint64_t> field_modulus;
  int retry_cap = 64;
};

// First prime above the sampling bound for the regime:
//   case 1: 2
//   case 2: e* C(|S-bar|, e*)
//   case 3: e* C(|S-bar|+1, e*)
//   remaining: d C(K q-bar, d) with d = source dimension
// nullopt when the bound does not fit below 2^61-1.
std::optional<std::uint64_t> AutoFieldModulus(Regime regime,
                                              const SecurityAnalysis& analysis,
                                              int total_users,
                                              const LpSolution* lp);

// Starting field when AutoFieldModulus overflows; the builder doubles it
// each time the retry budget runs out.
inline constexpr std::uint64_t kFallbackFieldStart = 1048583;  // first prime >= 2^20

absl::StatusOr<KeyScheme> BuildCase1(const Instance& instance,
                                     const SecurityAnalysis& analysis,
                                     const BuildOptions& options = {});
absl::StatusOr<KeyScheme> BuildCase2(const Instance& instance,
                                     const SecurityAnalysis& analysis, Rng& rng,
                                     const BuildOptions& options = {});
absl::StatusOr<KeyScheme> BuildCase3(const Instance& instance,
                                     const SecurityAnalysis& analysis, Rng& rng,
                                     const BuildOptions& options = {});
absl::StatusOr<KeyScheme> BuildRemainingScheme(const Instance& instance,
                                                const SecurityAnalysis& analysis,
                                                const LpSolution& lp, Rng& rng,
                                                const BuildOptions& options = {});

// Dispatches on the regime. `lp` is required for the remaining regime.
absl::StatusOr<KeyScheme> BuildScheme(const Instance& instance,
                                      const SecurityAnalysis& analysis,
                                      const LpSolution* lp, Rng& rng,
                                      const BuildOptions& options = {});

// Lexicographically smallest user outside Q. NoOutsideUser if Q = K.
absl::StatusOr<UserId> OutsideUser(const Instance& instance,
                                   const SecurityAnalysis& analysis);

// Deterministic checks every returned or injected scheme must pass:
//  - shape and zero-sum;
//  - case 1: every K-1 of the K rows are independent;
//  - cases 2/3: every min(e*, r-1) of the r nonzero key rows are independent;
//  - remaining: S-bar users have rank L, others rank p_{u,v} (needs `lp`);
//  - for every server k and disjoint pair (m, n), the keys of
//    (U(m,n) \ {k}) as server sums and of S_m n K_k add
//    (|U(m,n) \ {k}| + |S_m n K_k|) L dimensions on top of the keys of T_n,
//    less L when those users together with T_n are all K users.
// IndependenceViolation / ZeroSumViolation / MalformedScheme on failure.
absl::Status CheckSchemeConditions(const Instance& instance,
                                   const SecurityAnalysis& analysis,
                                   const KeyScheme& scheme,
                                   const LpSolution* lp);

// Accepts an externally supplied scheme: its regime must match the
// instance's, its rate must equal the regime's achievable rate, and it must
// pass CheckSchemeConditions.
absl::Status CheckInjectedScheme(const Instance& instance,
                                 const SecurityAnalysis& analysis,
                                 const KeyScheme& scheme, const LpSolution* lp);

// Rate the construction achieves for the regime (K-1, e*, e*, or e* + b*).
absl::StatusOr<Rational> AchievableRate(const SecurityAnalysis& analysis,
                                        int total_users, const LpSolution* lp);

}  // namespace msagg

#endif  // MSAGG_SCHEME_BUILDER_H_
