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

#include "msagg/key_scheme.h"

#include <bit>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {

FMatrix CoefficientSum(const KeyScheme& scheme) {
  FMatrix sum(scheme.block_len, scheme.source_dim);
  for (const FMatrix& c : scheme.coeffs) sum = AddMatrices(scheme.field, sum, c);
  return sum;
}

absl::Status CheckShape(const KeyScheme& scheme, int total_users) {
  auto fail = [](std::string detail) {
    return KindError(absl::StatusCode::kInvalidArgument, "MalformedScheme",
                     detail);
  };
  if (scheme.block_len < 1) return fail("block length must be positive");
  if (scheme.source_dim < 0) return fail("negative source dimension");
  if (static_cast<int>(scheme.coeffs.size()) != total_users) {
    return fail(absl::StrCat("expected ", total_users, " coefficient blocks, got ",
                             scheme.coeffs.size()));
  }
  for (std::size_t i = 0; i < scheme.coeffs.size(); ++i) {
    const FMatrix& c = scheme.coeffs[i];
    if (c.rows != scheme.block_len || c.cols != scheme.source_dim) {
      return fail(absl::StrCat("block ", i, " has shape ", c.rows, "x", c.cols));
    }
    for (auto x : c.data) {
      if (x >= scheme.field.modulus()) {
        return fail(absl::StrCat("block ", i, " has an entry outside [0, q)"));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status CheckZeroSum(const KeyScheme& scheme) {
  FMatrix sum = CoefficientSum(scheme);
  if (!sum.IsZero()) {
    return KindError(absl::StatusCode::kFailedPrecondition, "ZeroSumViolation",
                     absl::StrCat("keys sum to ", sum.DebugString()));
  }
  return absl::OkStatus();
}

FMatrix ServerSum(const KeyScheme& scheme, const Topology& topology,
                  int server) {
  FMatrix sum(scheme.block_len, scheme.source_dim);
  for (const UserId& u : topology.UsersOf(server)) {
    sum = AddMatrices(scheme.field, sum, scheme.Coeffs(topology, u));
  }
  return sum;
}

FMatrix StackUsers(const KeyScheme& scheme, UserMask users) {
  FMatrix out(0, scheme.source_dim);
  while (users != 0) {
    int i = std::countr_zero(users);
    users &= users - 1;
    const FMatrix& c = scheme.coeffs[i];
    out.data.insert(out.data.end(), c.data.begin(), c.data.end());
    out.rows += c.rows;
  }
  return out;
}

}  // namespace msagg
