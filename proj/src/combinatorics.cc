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

#include "msagg/combinatorics.h"

#include <algorithm>
#include <bit>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

int Popcount(UserMask m) { return std::popcount(m); }

UserMask ExplicitUnion(const Instance& instance) {
  UserMask out = 0;
  for (UserMask s : instance.security.closure_masks) out |= s;
  return out;
}

template <typename Fn>
void ForEachDisjointPair(const Instance& instance, Fn&& fn) {
  for (int m = 0; m < static_cast<int>(instance.security.size()); ++m) {
    for (int n = 0; n < static_cast<int>(instance.collusion.size()); ++n) {
      if (!IsDisjointPair(instance, m, n)) continue;
      fn(m, n, ClassifyPair(instance, m, n));
    }
  }
}

int EValueMasked(const Instance& instance, UserMask total,
                 const PairClassification& pair, int server) {
  const UserMask s = instance.security.closure_masks[pair.m];
  const UserMask t = instance.collusion.closure_masks[pair.n];
  const UserMask ku = instance.topology.ServerMask(server);
  int others = 0;
  for (int u : pair.u_set) others += (u != server);
  return Popcount(((s & ku) | t) & total) + others;
}

}  // namespace

PairClassification ClassifyPair(const Instance& instance, int m, int n) {
  PairClassification out;
  out.m = m;
  out.n = n;
  const UserMask s = instance.security.closure_masks[m];
  const UserMask t = instance.collusion.closure_masks[n];
  for (int u = 1; u <= instance.topology.server_count(); ++u) {
    const UserMask ku = instance.topology.ServerMask(u);
    if ((s & ku) != 0 && ((s | t) & ku) == ku) {
      out.u_set.push_back(u);
      out.u_users |= ku;
    }
    if ((s & ku) == 0 && (t & ku) == ku) out.f_set.push_back(u);
  }
  return out;
}

bool IsDisjointPair(const Instance& instance, int m, int n) {
  return (instance.security.closure_masks[m] &
          instance.collusion.closure_masks[n]) == 0;
}

UserMask CoveredMask(const Instance& instance, const PairClassification& pair,
                     int server) {
  return (instance.security.closure_masks[pair.m] &
          instance.topology.ServerMask(server)) |
         pair.u_users | instance.collusion.closure_masks[pair.n];
}

UserSet ImplicitSecuritySet(const Instance& instance) {
  const int k = instance.topology.total_users();
  const UserMask full = instance.topology.FullMask();
  UserMask implicit = 0;
  ForEachDisjointPair(instance, [&](int, int, const PairClassification& pair) {
    for (int u = 1; u <= instance.topology.server_count(); ++u) {
      UserMask b = CoveredMask(instance, pair, u);
      if (Popcount(b) == k - 1) implicit |= full & ~b;
    }
  });
  return instance.topology.SetOf(implicit & ~ExplicitUnion(instance));
}

UserSet TotalSecuritySet(const Instance& instance) {
  return instance.topology.SetOf(
      ExplicitUnion(instance) |
      instance.topology.MaskOf(ImplicitSecuritySet(instance)));
}

int AValue(const Instance& instance, const UserSet& total_set,
           const Triple& t) {
  PairClassification pair = ClassifyPair(instance, t.m, t.n);
  return Popcount(CoveredMask(instance, pair, t.server) &
                  instance.topology.MaskOf(total_set));
}

int EValue(const Instance& instance, const UserSet& total_set,
           const Triple& t) {
  PairClassification pair = ClassifyPair(instance, t.m, t.n);
  return EValueMasked(instance, instance.topology.MaskOf(total_set), pair,
                      t.server);
}

StarValues ComputeAEStars(const Instance& instance, const UserSet& total_set) {
  StarValues out;
  const UserMask total = instance.topology.MaskOf(total_set);
  ForEachDisjointPair(instance, [&](int m, int n,
                                    const PairClassification& pair) {
    for (int u = 1; u <= instance.topology.server_count(); ++u) {
      Triple t{u, m, n};
      int a = Popcount(CoveredMask(instance, pair, u) & total);
      if (a > out.a_star) {
        out.a_star = a;
        out.a_witnesses.clear();
      }
      if (a == out.a_star) out.a_witnesses.push_back(t);

      int e = EValueMasked(instance, total, pair, u);
      if (e > out.e_star) {
        out.e_star = e;
        out.e_witnesses.clear();
      }
      if (e == out.e_star) out.e_witnesses.push_back(t);
    }
  });
  return out;
}

QSets ComputeQ(const Instance& instance, const UserSet& total_set,
               const StarValues& stars) {
  const UserMask total = instance.topology.MaskOf(total_set);
  const int total_size = static_cast<int>(total_set.size());
  UserMask q1 = 0;
  UserMask q2 = 0;
  ForEachDisjointPair(instance, [&](int, int, const PairClassification& pair) {
    for (int u = 1; u <= instance.topology.server_count(); ++u) {
      UserMask b = CoveredMask(instance, pair, u);
      if (Popcount(b & total) == total_size) q1 |= b;
      if (EValueMasked(instance, total, pair, u) == stars.e_star) q2 |= b;
    }
  });
  QSets out;
  out.q1 = instance.topology.SetOf(q1);
  out.q2 = instance.topology.SetOf(q2);
  out.q_set = q1 != 0 ? instance.topology.SetOf(q1 | q2) : UserSet{};
  return out;
}

SecurityAnalysis Analyze(const Instance& instance) {
  SecurityAnalysis out;
  out.implicit_set = ImplicitSecuritySet(instance);
  out.total_set = instance.topology.SetOf(
      ExplicitUnion(instance) | instance.topology.MaskOf(out.implicit_set));
  StarValues stars = ComputeAEStars(instance, out.total_set);
  QSets q = ComputeQ(instance, out.total_set, stars);
  out.a_star = stars.a_star;
  out.e_star = stars.e_star;
  out.a_witnesses = std::move(stars.a_witnesses);
  out.e_witnesses = std::move(stars.e_witnesses);
  out.q1 = std::move(q.q1);
  out.q2 = std::move(q.q2);
  out.q_set = std::move(q.q_set);
  return out;
}

absl::Status CheckAnalysis(const Instance& instance,
                           const SecurityAnalysis& analysis) {
  auto fail = [](std::string detail) {
    return KindError(absl::StatusCode::kFailedPrecondition,
                     "InconsistentAnalysis", detail);
  };
  const int servers = instance.topology.server_count();
  const int ms = static_cast<int>(instance.security.size());
  const int ns = static_cast<int>(instance.collusion.size());
  auto valid = [&](const Triple& t) {
    return t.server >= 1 && t.server <= servers && t.m >= 0 && t.m < ms &&
           t.n >= 0 && t.n < ns && IsDisjointPair(instance, t.m, t.n);
  };
  if (analysis.a_witnesses.empty() || analysis.e_witnesses.empty()) {
    return fail("missing witnesses");
  }
  for (const Triple& t : analysis.a_witnesses) {
    if (!valid(t) || AValue(instance, analysis.total_set, t) != analysis.a_star) {
      return fail(absl::StrCat("a-witness (", t.server, ",", t.m + 1, ",",
                               t.n + 1, ") does not reach a* = ",
                               analysis.a_star));
    }
  }
  for (const Triple& t : analysis.e_witnesses) {
    if (!valid(t) || EValue(instance, analysis.total_set, t) != analysis.e_star) {
      return fail(absl::StrCat("e-witness (", t.server, ",", t.m + 1, ",",
                               t.n + 1, ") does not reach e* = ",
                               analysis.e_star));
    }
  }
  SecurityAnalysis fresh = Analyze(instance);
  if (fresh.total_set != analysis.total_set ||
      fresh.implicit_set != analysis.implicit_set ||
      fresh.a_star != analysis.a_star || fresh.e_star != analysis.e_star ||
      fresh.q_set != analysis.q_set) {
    return fail("analysis does not match the instance");
  }
  return absl::OkStatus();
}

}  // namespace msagg
