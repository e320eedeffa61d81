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

#include "msagg/protocol.h"

#include <bit>
#include <utility>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

Symbols AddSymbols(const PrimeField& f, Symbols a, const Symbols& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.Add(a[i], b[i]);
  return a;
}

}  // namespace

Transcript RunProtocol(const Topology& topology, const KeyScheme& scheme,
                       Rng& rng) {
  const std::uint64_t q = scheme.field.modulus();
  std::vector<Symbols> inputs(topology.total_users(), Symbols(scheme.block_len));
  for (Symbols& w : inputs) {
    for (auto& x : w) x = rng.UniformBelow(q);
  }
  Symbols key(scheme.source_dim);
  for (auto& x : key) x = rng.UniformBelow(q);
  return RunProtocolWith(topology, scheme, std::move(inputs), std::move(key));
}

Transcript RunProtocolWith(const Topology& topology, const KeyScheme& scheme,
                           std::vector<Symbols> inputs, Symbols source_key) {
  const PrimeField& f = scheme.field;
  const int k = topology.total_users();
  Transcript t;
  t.inputs = std::move(inputs);
  t.source_key = std::move(source_key);
  for (int i = 0; i < k; ++i) {
    t.keys.push_back(MultiplyVector(f, scheme.coeffs[i], t.source_key));
    t.x_messages.push_back(AddSymbols(f, t.inputs[i], t.keys[i]));
  }
  for (int u = 1; u <= topology.server_count(); ++u) {
    Symbols y(scheme.block_len, 0);
    for (const UserId& id : topology.UsersOf(u)) {
      y = AddSymbols(f, std::move(y), t.x_messages[topology.IndexOf(id)]);
    }
    t.y_messages.push_back(std::move(y));
  }
  for (int s = 1; s <= topology.server_count(); ++s) {
    Symbols d(scheme.block_len, 0);
    for (const UserId& id : topology.UsersOf(s)) {
      d = AddSymbols(f, std::move(d), t.x_messages[topology.IndexOf(id)]);
    }
    for (int u = 1; u <= topology.server_count(); ++u) {
      if (u != s) d = AddSymbols(f, std::move(d), t.y_messages[u - 1]);
    }
    t.decoded.push_back(std::move(d));
  }
  return t;
}

CorrectnessReport CheckCorrectness(const Topology& topology,
                                   const KeyScheme& scheme,
                                   const Transcript& transcript) {
  CorrectnessReport report;
  report.expected.assign(scheme.block_len, 0);
  for (const Symbols& w : transcript.inputs) {
    report.expected = AddSymbols(scheme.field, std::move(report.expected), w);
  }
  for (int s = 1; s <= topology.server_count(); ++s) {
    if (transcript.decoded[s - 1] != report.expected) {
      report.ok = false;
      report.failing_servers.push_back(s);
    }
  }
  return report;
}

int JointDim(const Topology& topology, const KeyScheme& scheme) {
  return topology.total_users() * scheme.block_len + scheme.source_dim;
}

Symbols JointSource(const Transcript& transcript) {
  Symbols out;
  for (const Symbols& w : transcript.inputs) out.insert(out.end(), w.begin(), w.end());
  out.insert(out.end(), transcript.source_key.begin(), transcript.source_key.end());
  return out;
}

namespace {

// Adds W_i (if with_input) and Z_i (if with_key) into the L rows starting at
// `row` of `m`.
void AccumulateUser(const Topology& topology, const KeyScheme& scheme, int i,
                    bool with_input, bool with_key, FMatrix& m, int row) {
  const PrimeField& f = scheme.field;
  const int base = topology.total_users() * scheme.block_len;
  for (int l = 0; l < scheme.block_len; ++l) {
    if (with_input) {
      auto& x = m.at(row + l, i * scheme.block_len + l);
      x = f.Add(x, 1);
    }
    if (with_key) {
      for (int j = 0; j < scheme.source_dim; ++j) {
        auto& x = m.at(row + l, base + j);
        x = f.Add(x, scheme.coeffs[i].at(l, j));
      }
    }
  }
}

}  // namespace

FMatrix ViewRows(const Topology& topology, const KeyScheme& scheme, int k) {
  const int l = scheme.block_len;
  const int rows = (topology.server_count() - 1 + topology.users_at(k)) * l;
  FMatrix m(rows, JointDim(topology, scheme));
  int row = 0;
  for (int u = 1; u <= topology.server_count(); ++u) {
    if (u == k) continue;
    for (const UserId& id : topology.UsersOf(u)) {
      AccumulateUser(topology, scheme, topology.IndexOf(id), true, true, m, row);
    }
    row += l;
  }
  for (const UserId& id : topology.UsersOf(k)) {
    AccumulateUser(topology, scheme, topology.IndexOf(id), true, true, m, row);
    row += l;
  }
  return m;
}

FMatrix SideRows(const Topology& topology, const KeyScheme& scheme,
                 UserMask colluders) {
  const int l = scheme.block_len;
  const int count = std::popcount(colluders);
  FMatrix m((1 + 2 * count) * l, JointDim(topology, scheme));
  for (int i = 0; i < topology.total_users(); ++i) {
    AccumulateUser(topology, scheme, i, true, false, m, 0);
  }
  int row = l;
  for (UserMask c = colluders; c != 0; c &= c - 1) {
    AccumulateUser(topology, scheme, std::countr_zero(c), true, false, m, row);
    row += l;
  }
  for (UserMask c = colluders; c != 0; c &= c - 1) {
    AccumulateUser(topology, scheme, std::countr_zero(c), false, true, m, row);
    row += l;
  }
  return m;
}

FMatrix SecretRows(const Topology& topology, const KeyScheme& scheme,
                   UserMask secrets) {
  const int l = scheme.block_len;
  FMatrix m(std::popcount(secrets) * l, JointDim(topology, scheme));
  int row = 0;
  for (UserMask c = secrets; c != 0; c &= c - 1) {
    AccumulateUser(topology, scheme, std::countr_zero(c), true, false, m, row);
    row += l;
  }
  return m;
}

absl::StatusOr<AdversaryView> MakeAdversaryView(const Instance& instance,
                                                const KeyScheme& scheme,
                                                const Transcript& transcript,
                                                int k,
                                                const UserSet& colluders) {
  const Topology& topo = instance.topology;
  if (k < 1 || k > topo.server_count()) {
    return KindError(absl::StatusCode::kInvalidArgument, "InvalidColluder",
                     absl::StrCat("server ", k, " out of range"));
  }
  UserSet canonical = colluders;
  Canonicalize(canonical);
  if (instance.collusion.Find(canonical) < 0) {
    return KindError(absl::StatusCode::kInvalidArgument, "InvalidColluder",
                     absl::StrCat(UserSetToString(canonical),
                                  " is not a colluding set of the instance"));
  }
  AdversaryView view;
  view.server = k;
  view.colluders = canonical;
  view.view_rows = ViewRows(topo, scheme, k);
  view.side_rows = SideRows(topo, scheme, topo.MaskOf(canonical));

  for (int u = 1; u <= topo.server_count(); ++u) {
    if (u == k) continue;
    const Symbols& y = transcript.y_messages[u - 1];
    view.view_values.insert(view.view_values.end(), y.begin(), y.end());
  }
  for (const UserId& id : topo.UsersOf(k)) {
    const Symbols& x = transcript.x_messages[topo.IndexOf(id)];
    view.view_values.insert(view.view_values.end(), x.begin(), x.end());
  }
  Symbols sum(scheme.block_len, 0);
  for (const Symbols& w : transcript.inputs) sum = AddSymbols(scheme.field, sum, w);
  view.side_values = sum;
  const UserMask mask = topo.MaskOf(canonical);
  for (UserMask c = mask; c != 0; c &= c - 1) {
    const Symbols& w = transcript.inputs[std::countr_zero(c)];
    view.side_values.insert(view.side_values.end(), w.begin(), w.end());
  }
  for (UserMask c = mask; c != 0; c &= c - 1) {
    const Symbols& z = transcript.keys[std::countr_zero(c)];
    view.side_values.insert(view.side_values.end(), z.begin(), z.end());
  }
  return view;
}

}  // namespace msagg
