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

#ifndef MSAGG_KEY_SCHEME_H_
#define MSAGG_KEY_SCHEME_H_

#include <vector>

#include "absl/status/status.h"
#include "msagg/gf.h"
#include "msagg/model.h"
#include "msagg/rates.h"
#include "msagg/rational.h"

namespace msagg {

// Linear key assignment: Z_{u,v} = coeffs[IndexOf(u,v)] * N, where N is the
// source key of `source_dim` uniform symbols and each Z_{u,v} has
// `block_len` symbols.
struct KeyScheme {
  PrimeField field;
  int block_len = 1;
  int source_dim = 0;
  std::vector<FMatrix> coeffs;  // one block_len x source_dim matrix per user
  Regime regime = Regime::kCase1;
  Rational claimed_rate;

  const FMatrix& Coeffs(const Topology& topology, const UserId& u) const {
    return coeffs[topology.IndexOf(u)];
  }
};

// Sum of all coefficient matrices.
FMatrix CoefficientSum(const KeyScheme& scheme);

// Every coefficient matrix has shape block_len x source_dim with entries in
// [0, q). MalformedScheme otherwise.
absl::Status CheckShape(const KeyScheme& scheme, int total_users);

// ZeroSumViolation if the coefficient matrices do not sum to zero.
absl::Status CheckZeroSum(const KeyScheme& scheme);

// Sum over a server's users.
FMatrix ServerSum(const KeyScheme& scheme, const Topology& topology,
                  int server);

// Row blocks of the users in `users`, stacked in flat-index order.
FMatrix StackUsers(const KeyScheme& scheme, UserMask users);

}  // namespace msagg

#endif  // MSAGG_KEY_SCHEME_H_
