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

#ifndef MSAGG_LP_H_
#define MSAGG_LP_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "msagg/combinatorics.h"
#include "msagg/rational.h"

namespace msagg {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

// minimize c.x subject to rows (a_i . x  rel_i  b_i) and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Relation> rel;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LinearProgramResult {
  std::vector<Rational> x;
  Rational objective;
  // One multiplier per row, signed for the original row orientation:
  // >= rows get y >= 0, <= rows y <= 0, = rows are free.
  std::vector<Rational> y;
};

// Two-phase tableau simplex over exact rationals with Bland's rule.
// Infeasible / Unbounded statuses for those outcomes.
absl::StatusOr<LinearProgramResult> SolveLinearProgram(const LinearProgram& lp);

// Primal feasibility, dual feasibility and equal objectives, all exact.
// CertificateFailure with the first violated condition.
absl::Status CertifyOptimal(const LinearProgram& lp,
                            const LinearProgramResult& result);

// Key allocation program: minimize the sum of b over `variables` subject to
// sum over each constraint subset >= 1.
struct LpProblem {
  std::vector<UserId> variables;                // K \ S-bar, sorted
  std::vector<std::vector<int>> constraints;    // sorted variable indices
};

// One constraint per a*-witness: the variables outside the witness's covered
// set. Identical constraints are merged and constraints implied by a strictly
// smaller one are dropped. InfeasibleConstraint when a witness leaves no
// variable.
absl::StatusOr<LpProblem> BuildLp(const Instance& instance,
                                  const SecurityAnalysis& analysis);

// Same, for an explicit witness list (order does not matter).
absl::StatusOr<LpProblem> BuildLpFromWitnesses(
    const Instance& instance, const UserSet& total_set,
    const std::vector<Triple>& witnesses);

LinearProgram ToLinearProgram(const LpProblem& problem);

struct LpSolution {
  std::vector<Rational> values;  // aligned with LpProblem::variables
  Rational objective;            // b*
  mpz_class common_denominator;  // q-bar
  std::vector<mpz_class> numerators;
  mpz_class p_bar;
  std::vector<Rational> duals;   // aligned with constraints
};

// Solves and certifies. An empty constraint list gives b* = 0, q-bar = 1.
absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem);

}  // namespace msagg

#endif  // MSAGG_LP_H_
