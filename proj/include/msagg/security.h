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

#ifndef MSAGG_SECURITY_H_
#define MSAGG_SECURITY_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "msagg/gf.h"
#include "msagg/key_scheme.h"
#include "msagg/model.h"

namespace msagg {

// Three linear functions of a uniform vector over F_q^source_dim.
struct LinearView {
  int source_dim = 0;
  FMatrix a;  // what the server sees
  FMatrix b;  // the protected inputs
  FMatrix c;  // what it is allowed to know
};

struct MiTerms {
  int rank_ac = 0;
  int rank_bc = 0;
  int rank_abc = 0;
  int rank_c = 0;
  int mi = 0;  // rank_ac + rank_bc - rank_abc - rank_c
};

// I(A; B | C) in units of log q. DimensionMismatch if a block's column count
// differs from source_dim.
absl::StatusOr<MiTerms> ConditionalMiTerms(const PrimeField& field,
                                           const LinearView& view);
absl::StatusOr<int> ConditionalMiRank(const PrimeField& field,
                                      const LinearView& view);

// View of server k against secrets S and colluders T under `scheme`.
LinearView BuildLinearView(const Topology& topology, const KeyScheme& scheme,
                           int k, UserMask secrets, UserMask colluders);

struct SecurityViolation {
  int k = 0;  // 1-based server
  int m = 0;  // 0-based closure indices
  int n = 0;
  int mi = 0;
};

struct SecurityReport {
  std::int64_t triples_checked = 0;
  std::vector<SecurityViolation> violations;
};

// Every server k, every S_m, every T_n of the closures.
absl::StatusOr<SecurityReport> VerifyAll(const Instance& instance,
                                         const KeyScheme& scheme);

inline constexpr std::uint64_t kDefaultOracleCap = std::uint64_t{1} << 22;

// I(A; B | C) by enumerating every source realization and counting the
// support of each joint distribution. All four distributions must come out
// uniform on their support; the entropies are then exact integers in log q
// units. TooLarge when q^source_dim exceeds `cap`.
absl::StatusOr<int> EntropyOracle(const PrimeField& field,
                                  const LinearView& view,
                                  std::uint64_t cap = kDefaultOracleCap);

}  // namespace msagg

#endif  // MSAGG_SECURITY_H_
