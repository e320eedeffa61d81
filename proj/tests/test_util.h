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

#ifndef MSAGG_TESTS_TEST_UTIL_H_
#define MSAGG_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msagg/gf.h"
#include "msagg/key_scheme.h"
#include "msagg/lp.h"
#include "msagg/model.h"
#include "msagg/rates.h"
#include "msagg/security.h"

namespace msagg::testing {

std::string DataPath(const std::string& name);
std::string ReadFileOrDie(const std::string& path);

// data/example{1,2}.json and the matching hand-written key files.
Instance LoadExample(int which);
KeyScheme LoadExampleKeys(int which, const Instance& instance);

Instance MakeInstance(std::vector<int> servers,
                      std::vector<UserSet> security,
                      std::vector<UserSet> collusion);

// Random instance from the generator with default options.
Instance RandomInstance(std::uint64_t seed);

// Solves the square system m x = rhs; nullopt when singular.
std::optional<std::vector<Rational>> SolveSquare(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs);
bool Feasible(const LinearProgram& lp, const std::vector<Rational>& x);
// Minimum of c.x over all basic feasible points: every choice of num_vars
// tight rows among the constraints and the sign bounds. Assumes the LP is
// bounded when feasible. Small integer data goes through exact fraction-free
// elimination; anything else through rationals.
std::optional<Rational> VertexMinimum(const LinearProgram& lp);
std::optional<Rational> VertexMinimumRational(const LinearProgram& lp);

// I(A; B | C) in log_q units from Shannon entropies of the raw counts over
// every source realization, with no assumption about the distributions.
double ShannonMi(const PrimeField& f, const LinearView& v);

}  // namespace msagg::testing

#endif  // MSAGG_TESTS_TEST_UTIL_H_
