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

#include "msagg/lp.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

enum class ColumnKind { kOriginal, kSlack, kArtificial };

struct Tableau {
  // rows x (cols + 1); last column is the right-hand side.
  std::vector<std::vector<Rational>> t;
  std::vector<int> basis;
  std::vector<ColumnKind> kind;
  std::vector<int> unit_column;  // initial identity column of each row
  int cols = 0;

  void Pivot(int row, int col) {
    Rational p = t[row][col];
    for (Rational& v : t[row]) v /= p;
    for (int r = 0; r < static_cast<int>(t.size()); ++r) {
      if (r == row || t[r][col] == 0) continue;
      Rational factor = t[r][col];
      for (int j = 0; j <= cols; ++j) t[r][j] -= factor * t[row][j];
    }
    basis[row] = col;
  }

  std::vector<Rational> ReducedCosts(const std::vector<Rational>& cost) const {
    std::vector<Rational> d(cols);
    for (int j = 0; j < cols; ++j) {
      d[j] = cost[j];
      for (int r = 0; r < static_cast<int>(t.size()); ++r) {
        if (cost[basis[r]] != 0) d[j] -= cost[basis[r]] * t[r][j];
      }
    }
    return d;
  }

  // Returns false when unbounded.
  bool Optimize(const std::vector<Rational>& cost,
                const std::vector<bool>& allowed) {
    for (;;) {
      std::vector<Rational> d = ReducedCosts(cost);
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (allowed[j] && d[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < static_cast<int>(t.size()); ++r) {
        if (t[r][enter] <= 0) continue;
        Rational ratio = t[r][cols] / t[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
  }
};

}  // namespace

absl::StatusOr<LinearProgramResult> SolveLinearProgram(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.a.size());
  const int n = lp.num_vars;

  // Orient rows so the right-hand side is non-negative.
  std::vector<Rational> sign(m, 1);
  std::vector<Relation> rel = lp.rel;
  for (int i = 0; i < m; ++i) {
    if (lp.b[i] < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::kLessEqual) {
        rel[i] = Relation::kGreaterEqual;
      } else if (rel[i] == Relation::kGreaterEqual) {
        rel[i] = Relation::kLessEqual;
      }
    }
  }

  Tableau tab;
  tab.kind.assign(n, ColumnKind::kOriginal);
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rel[i] != Relation::kEqual) {
      slack_col[i] = static_cast<int>(tab.kind.size());
      tab.kind.push_back(ColumnKind::kSlack);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (rel[i] != Relation::kLessEqual) {
      art_col[i] = static_cast<int>(tab.kind.size());
      tab.kind.push_back(ColumnKind::kArtificial);
    }
  }
  tab.cols = static_cast<int>(tab.kind.size());
  tab.t.assign(m, std::vector<Rational>(tab.cols + 1));
  tab.basis.assign(m, -1);
  tab.unit_column.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.t[i][j] = sign[i] * lp.a[i][j];
    tab.t[i][tab.cols] = sign[i] * lp.b[i];
    if (rel[i] == Relation::kLessEqual) {
      tab.t[i][slack_col[i]] = 1;
      tab.basis[i] = tab.unit_column[i] = slack_col[i];
    } else {
      if (rel[i] == Relation::kGreaterEqual) tab.t[i][slack_col[i]] = -1;
      tab.t[i][art_col[i]] = 1;
      tab.basis[i] = tab.unit_column[i] = art_col[i];
    }
  }

  std::vector<bool> allowed(tab.cols, true);
  std::vector<Rational> phase1(tab.cols, 0);
  bool any_artificial = false;
  for (int j = 0; j < tab.cols; ++j) {
    if (tab.kind[j] == ColumnKind::kArtificial) {
      phase1[j] = 1;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    tab.Optimize(phase1, allowed);
    Rational infeasibility = 0;
    for (int r = 0; r < m; ++r) {
      if (tab.kind[tab.basis[r]] == ColumnKind::kArtificial) {
        infeasibility += tab.t[r][tab.cols];
      }
    }
    if (infeasibility > 0) {
      return KindError(absl::StatusCode::kFailedPrecondition, "Infeasible",
                       "linear program has no feasible point");
    }
    // Drive zero-valued artificials out where a real column can replace
    // them. Rows where none can are redundant and keep the artificial at 0.
    for (int r = 0; r < m; ++r) {
      if (tab.kind[tab.basis[r]] != ColumnKind::kArtificial) continue;
      for (int j = 0; j < tab.cols; ++j) {
        if (tab.kind[j] != ColumnKind::kArtificial && tab.t[r][j] != 0) {
          tab.Pivot(r, j);
          break;
        }
      }
    }
    for (int j = 0; j < tab.cols; ++j) {
      if (tab.kind[j] == ColumnKind::kArtificial) allowed[j] = false;
    }
  }

  std::vector<Rational> cost(tab.cols, 0);
  for (int j = 0; j < n; ++j) cost[j] = lp.c[j];
  if (!tab.Optimize(cost, allowed)) {
    return KindError(absl::StatusCode::kFailedPrecondition, "Unbounded",
                     "objective is unbounded below");
  }

  LinearProgramResult out;
  out.x.assign(n, 0);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) out.x[tab.basis[r]] = tab.t[r][tab.cols];
  }
  out.objective = 0;
  for (int j = 0; j < n; ++j) out.objective += lp.c[j] * out.x[j];
  // y = c_B B^{-1}; column unit_column[i] of the current tableau is
  // B^{-1} e_i.
  out.y.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    Rational yi = 0;
    for (int r = 0; r < m; ++r) {
      yi += cost[tab.basis[r]] * tab.t[r][tab.unit_column[i]];
    }
    out.y[i] = sign[i] * yi;
  }
  return out;
}

absl::Status CertifyOptimal(const LinearProgram& lp,
                            const LinearProgramResult& result) {
  auto fail = [](std::string detail) {
    return KindError(absl::StatusCode::kInternal, "CertificateFailure", detail);
  };
  const int m = static_cast<int>(lp.a.size());
  for (int j = 0; j < lp.num_vars; ++j) {
    if (result.x[j] < 0) return fail(absl::StrCat("x[", j, "] < 0"));
  }
  Rational dual_objective = 0;
  for (int i = 0; i < m; ++i) {
    Rational lhs = 0;
    for (int j = 0; j < lp.num_vars; ++j) lhs += lp.a[i][j] * result.x[j];
    bool ok = lp.rel[i] == Relation::kLessEqual      ? lhs <= lp.b[i]
              : lp.rel[i] == Relation::kGreaterEqual ? lhs >= lp.b[i]
                                                     : lhs == lp.b[i];
    if (!ok) return fail(absl::StrCat("row ", i, " violated"));
    if (lp.rel[i] == Relation::kGreaterEqual && result.y[i] < 0) {
      return fail(absl::StrCat("dual sign on row ", i));
    }
    if (lp.rel[i] == Relation::kLessEqual && result.y[i] > 0) {
      return fail(absl::StrCat("dual sign on row ", i));
    }
    dual_objective += lp.b[i] * result.y[i];
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    Rational col = 0;
    for (int i = 0; i < m; ++i) col += lp.a[i][j] * result.y[i];
    if (col > lp.c[j]) return fail(absl::StrCat("dual column ", j));
  }
  Rational primal = 0;
  for (int j = 0; j < lp.num_vars; ++j) primal += lp.c[j] * result.x[j];
  if (primal != result.objective) return fail("objective mismatch");
  if (primal != dual_objective) {
    return fail(absl::StrCat("duality gap ", RationalToString(primal - dual_objective)));
  }
  return absl::OkStatus();
}

absl::StatusOr<LpProblem> BuildLpFromWitnesses(
    const Instance& instance, const UserSet& total_set,
    const std::vector<Triple>& witnesses) {
  const Topology& topo = instance.topology;
  const UserMask total = topo.MaskOf(total_set);
  const UserMask vars_mask = topo.FullMask() & ~total;

  LpProblem problem;
  problem.variables = topo.SetOf(vars_mask);
  std::set<UserMask> masks;
  for (const Triple& w : witnesses) {
    PairClassification pair = ClassifyPair(instance, w.m, w.n);
    UserMask outside = vars_mask & ~CoveredMask(instance, pair, w.server);
    if (outside == 0) {
      return KindError(absl::StatusCode::kFailedPrecondition,
                       "InfeasibleConstraint",
                       absl::StrCat("witness (u,m,n)=(", w.server, ",", w.m + 1,
                                    ",", w.n + 1,
                                    ") leaves no key variable to cover it"));
    }
    masks.insert(outside);
  }
  std::vector<UserMask> kept;
  for (UserMask c : masks) {
    bool dominated = false;
    for (UserMask d : masks) {
      if (d != c && (d & c) == d) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(c);
  }
  for (UserMask c : kept) {
    std::vector<int> row;
    for (std::size_t i = 0; i < problem.variables.size(); ++i) {
      if (c >> topo.IndexOf(problem.variables[i]) & 1) {
        row.push_back(static_cast<int>(i));
      }
    }
    problem.constraints.push_back(std::move(row));
  }
  std::sort(problem.constraints.begin(), problem.constraints.end());
  return problem;
}

absl::StatusOr<LpProblem> BuildLp(const Instance& instance,
                                  const SecurityAnalysis& analysis) {
  return BuildLpFromWitnesses(instance, analysis.total_set,
                              analysis.a_witnesses);
}

LinearProgram ToLinearProgram(const LpProblem& problem) {
  LinearProgram lp;
  lp.num_vars = static_cast<int>(problem.variables.size());
  lp.c.assign(lp.num_vars, 1);
  for (const std::vector<int>& row : problem.constraints) {
    std::vector<Rational> a(lp.num_vars, 0);
    for (int j : row) a[j] = 1;
    lp.a.push_back(std::move(a));
    lp.rel.push_back(Relation::kGreaterEqual);
    lp.b.push_back(1);
  }
  return lp;
}

absl::StatusOr<LpSolution> SolveLp(const LpProblem& problem) {
  LinearProgram lp = ToLinearProgram(problem);
  MSAGG_ASSIGN_OR_RETURN(LinearProgramResult result, SolveLinearProgram(lp));
  MSAGG_RETURN_IF_ERROR(CertifyOptimal(lp, result));
  LpSolution out;
  out.values = result.x;
  out.objective = result.objective;
  out.duals = result.y;
  out.common_denominator = CommonDenominator(out.values);
  out.p_bar = 0;
  for (const Rational& v : out.values) {
    mpz_class p = v.get_num() * (out.common_denominator / v.get_den());
    out.numerators.push_back(p);
    out.p_bar += p;
  }
  return out;
}

}  // namespace msagg
