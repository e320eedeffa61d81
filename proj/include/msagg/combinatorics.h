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

#ifndef MSAGG_COMBINATORICS_H_
#define MSAGG_COMBINATORICS_H_

#include <vector>

#include "msagg/model.h"

namespace msagg {

// (server u, S-index m, T-index n). `server` is 1-based; m and n index the
// closures and are 0-based in memory (closure[0] = empty set).
struct Triple {
  int server = 0;
  int m = 0;
  int n = 0;

  auto operator<=>(const Triple&) const = default;
};

struct PairClassification {
  int m = 0;
  int n = 0;
  // Servers u with S_m meeting K_u and S_m u T_n covering K_u.
  std::vector<int> u_set;
  // Servers u with S_m missing K_u and T_n covering K_u.
  std::vector<int> f_set;
  UserMask u_users = 0;  // union of K_u over u_set
};

PairClassification ClassifyPair(const Instance& instance, int m, int n);

// Only pairs with S_m and T_n disjoint enter the parameter maxima below; a
// secret that the colluders already hold imposes no constraint.
bool IsDisjointPair(const Instance& instance, int m, int n);

// (S_m n K_u) u K_{U(m,n)} u T_n.
UserMask CoveredMask(const Instance& instance, const PairClassification& pair,
                     int server);

struct SecurityAnalysis {
  UserSet implicit_set;  // S_I
  UserSet total_set;     // S-bar
  int a_star = 0;
  int e_star = 0;
  UserSet q1;
  UserSet q2;
  UserSet q_set;
  std::vector<Triple> a_witnesses;
  std::vector<Triple> e_witnesses;
};

UserSet ImplicitSecuritySet(const Instance& instance);
UserSet TotalSecuritySet(const Instance& instance);

struct StarValues {
  int a_star = 0;
  int e_star = 0;
  std::vector<Triple> a_witnesses;
  std::vector<Triple> e_witnesses;
};

// |A_{u,m,n}| and the e-value of a single triple, evaluated from scratch.
int AValue(const Instance& instance, const UserSet& total_set, const Triple& t);
int EValue(const Instance& instance, const UserSet& total_set, const Triple& t);

StarValues ComputeAEStars(const Instance& instance, const UserSet& total_set);

struct QSets {
  UserSet q1;
  UserSet q2;
  UserSet q_set;
};

QSets ComputeQ(const Instance& instance, const UserSet& total_set,
               const StarValues& stars);

SecurityAnalysis Analyze(const Instance& instance);

// Checks that every witness reproduces its claimed value and that the derived
// sets are consistent with the instance. Used when an analysis is read back
// from a file. InconsistentAnalysis on mismatch.
absl::Status CheckAnalysis(const Instance& instance,
                           const SecurityAnalysis& analysis);

}  // namespace msagg

#endif  // MSAGG_COMBINATORICS_H_
