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

#ifndef MSAGG_PROTOCOL_H_
#define MSAGG_PROTOCOL_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "msagg/key_scheme.h"
#include "msagg/model.h"
#include "msagg/rng.h"

namespace msagg {

using Symbols = std::vector<std::uint64_t>;

// One execution. Per-user vectors are indexed by flat user index, per-server
// vectors by server - 1. Every message has block_len symbols.
struct Transcript {
  std::vector<Symbols> inputs;      // W
  Symbols source_key;               // N
  std::vector<Symbols> keys;        // Z = coeffs * N
  std::vector<Symbols> x_messages;  // X = W + Z
  std::vector<Symbols> y_messages;  // Y_u = sum_v X_{u,v}
  std::vector<Symbols> decoded;     // sum_v X_{k,v} + sum_{u != k} Y_u
};

// Samples W and N uniformly.
Transcript RunProtocol(const Topology& topology, const KeyScheme& scheme,
                       Rng& rng);

// Runs with the given inputs and source key.
Transcript RunProtocolWith(const Topology& topology, const KeyScheme& scheme,
                           std::vector<Symbols> inputs, Symbols source_key);

struct CorrectnessReport {
  bool ok = true;
  Symbols expected;                 // true global sum
  std::vector<int> failing_servers; // 1-based
};

CorrectnessReport CheckCorrectness(const Topology& topology,
                                   const KeyScheme& scheme,
                                   const Transcript& transcript);

// Symbolic rows act on the joint source (W ∥ N): W_{u,v}^{(l)} is column
// IndexOf(u,v) * L + l, N_j is column K * L + j.
int JointDim(const Topology& topology, const KeyScheme& scheme);
Symbols JointSource(const Transcript& transcript);

// {Y_u}_{u != k} (ascending u) followed by {X_{k,v}}_v.
FMatrix ViewRows(const Topology& topology, const KeyScheme& scheme, int k);
// Global-sum rows, then W of `colluders`, then Z of `colluders`.
FMatrix SideRows(const Topology& topology, const KeyScheme& scheme,
                 UserMask colluders);
// Unit rows selecting W of `secrets`.
FMatrix SecretRows(const Topology& topology, const KeyScheme& scheme,
                   UserMask secrets);

struct AdversaryView {
  int server = 0;
  UserSet colluders;
  FMatrix view_rows;
  FMatrix side_rows;
  Symbols view_values;
  Symbols side_values;
};

// InvalidColluder when `colluders` is not in the collusion closure or the
// server is out of range.
absl::StatusOr<AdversaryView> MakeAdversaryView(const Instance& instance,
                                                const KeyScheme& scheme,
                                                const Transcript& transcript,
                                                int k,
                                                const UserSet& colluders);

}  // namespace msagg

#endif  // MSAGG_PROTOCOL_H_
