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

#ifndef MSAGG_RATIONAL_H_
#define MSAGG_RATIONAL_H_

#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include <gmpxx.h>

#include "absl/status/statusor.h"

namespace msagg {

// Exact rational; mpq_class keeps values canonical (gcd 1, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

// "p" for integers, "p/q" otherwise.
std::string RationalToString(const Rational& r);

// Accepts "p", "-p" and "p/q". ParseError otherwise.
absl::StatusOr<Rational> ParseRational(absl::string_view text);

// Least common multiple of the denominators; 1 for an empty list.
mpz_class CommonDenominator(const std::vector<Rational>& values);

}  // namespace msagg

#endif  // MSAGG_RATIONAL_H_
