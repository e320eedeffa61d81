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

#include "msagg/scheme_builder.h"

#include <bit>
#include <functional>
#include <map>
#include <string>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

absl::Status WrongRegime(Regime want, Regime got) {
  return KindError(absl::StatusCode::kFailedPrecondition, "WrongRegime",
                   absl::StrCat("builder for ", RegimeName(want),
                                " called on a ", RegimeName(got), " instance"));
}

absl::Status Violation(std::string detail) {
  return KindError(absl::StatusCode::kFailedPrecondition,
                   "IndependenceViolation", detail);
}

absl::Status RequireRegime(const Instance& instance,
                           const SecurityAnalysis& analysis, Regime want) {
  MSAGG_ASSIGN_OR_RETURN(
      Regime got, ClassifyRegime(analysis, instance.topology.total_users()));
  if (got != want) return WrongRegime(want, got);
  return absl::OkStatus();
}

KeyScheme EmptyScheme(const PrimeField& field, int total_users, int block_len,
                      int source_dim, Regime regime) {
  KeyScheme s{field, block_len, source_dim, {}, regime,
              Rational(source_dim, block_len)};
  s.claimed_rate.canonicalize();
  s.coeffs.assign(total_users, FMatrix(block_len, source_dim));
  return s;
}

UserMask NonzeroUsers(const KeyScheme& scheme) {
  UserMask out = 0;
  for (std::size_t i = 0; i < scheme.coeffs.size(); ++i) {
    if (!scheme.coeffs[i].IsZero()) out |= UserMask{1} << i;
  }
  return out;
}

// Calls fn(indices) for every `size`-subset of [0, n); stops early when fn
// returns a non-OK status.
absl::Status ForEachSubset(int n, int size,
                           const std::function<absl::Status(const std::vector<int>&)>& fn) {
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  if (size > n) return absl::OkStatus();
  for (;;) {
    MSAGG_RETURN_IF_ERROR(fn(idx));
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return absl::OkStatus();
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

absl::Status CheckRowSubsets(const KeyScheme& scheme, UserMask users, int size,
                             const Topology& topology) {
  std::vector<int> members;
  for (UserMask m = users; m != 0; m &= m - 1) {
    members.push_back(std::countr_zero(m));
  }
  return ForEachSubset(
      static_cast<int>(members.size()), size,
      [&](const std::vector<int>& pick) -> absl::Status {
        UserMask sub = 0;
        for (int i : pick) sub |= UserMask{1} << members[i];
        FMatrix rows = StackUsers(scheme, sub);
        if (Rank(scheme.field, rows) != rows.rows) {
          return Violation(absl::StrCat("key rows of ",
                                        UserSetToString(topology.SetOf(sub)),
                                        " are dependent"));
        }
        return absl::OkStatus();
      });
}

absl::Status CheckTripleIdentity(const Instance& instance,
                                 const KeyScheme& scheme) {
  const Topology& topo = instance.topology;
  const int servers = topo.server_count();
  std::vector<FMatrix> server_sums;
  for (int u = 1; u <= servers; ++u) server_sums.push_back(ServerSum(scheme, topo, u));

  std::vector<int> t_rank(instance.collusion.size(), -1);
  for (int m = 0; m < static_cast<int>(instance.security.size()); ++m) {
    const UserMask s = instance.security.closure_masks[m];
    for (int n = 0; n < static_cast<int>(instance.collusion.size()); ++n) {
      if (!IsDisjointPair(instance, m, n)) continue;
      const UserMask t = instance.collusion.closure_masks[n];
      PairClassification pair = ClassifyPair(instance, m, n);
      FMatrix t_rows = StackUsers(scheme, t);
      if (t_rank[n] < 0) t_rank[n] = Rank(scheme.field, t_rows);
      for (int k = 1; k <= servers; ++k) {
        const UserMask sk = s & topo.ServerMask(k);
        int others = 0;
        UserMask covered = sk | t;
        std::vector<FMatrix> blocks;
        for (int u : pair.u_set) {
          if (u == k) continue;
          ++others;
          covered |= topo.ServerMask(u);
          blocks.push_back(server_sums[u - 1]);
        }
        blocks.push_back(StackUsers(scheme, sk));
        blocks.push_back(t_rows);
        MSAGG_ASSIGN_OR_RETURN(int joint, StackRank(scheme.field, blocks));
        int want = (others + std::popcount(sk)) * scheme.block_len;
        // When the blocks reach every user, the zero-sum costs one block.
        if (covered == topo.FullMask()) want -= scheme.block_len;
        if (joint - t_rank[n] != want) {
          return Violation(absl::StrCat(
              "(k,m,n)=(", k, ",", m + 1, ",", n + 1, "): fresh key rank ",
              joint - t_rank[n], ", need ", want));
        }
      }
    }
  }
  return absl::OkStatus();
}

template <typename Sampler>
absl::StatusOr<KeyScheme> SampleUntilValid(const Instance& instance,
                                           const SecurityAnalysis& analysis,
                                           const LpSolution* lp,
                                           std::optional<std::uint64_t> auto_q,
                                           const BuildOptions& options,
                                           Sampler&& sample) {
  std::optional<std::uint64_t> fixed = options.field_modulus.has_value()
                                           ? options.field_modulus
                                           : instance.field_modulus;
  std::uint64_t q = fixed.has_value() ? *fixed
                    : auto_q.has_value() ? *auto_q
                                         : kFallbackFieldStart;
  const bool can_grow = !fixed.has_value() && !auto_q.has_value();
  for (;;) {
    MSAGG_ASSIGN_OR_RETURN(PrimeField field, PrimeField::Create(q));
    absl::Status last;
    for (int attempt = 0; attempt < options.retry_cap; ++attempt) {
      KeyScheme scheme = sample(field);
      last = CheckSchemeConditions(instance, analysis, scheme, lp);
      if (last.ok()) return scheme;
    }
    if (!can_grow || q > kMaxModulus / 2) {
      return KindError(absl::StatusCode::kResourceExhausted, "RetriesExhausted",
                       absl::StrCat(options.retry_cap, " samples over F_", q,
                                    " failed; last: ", last.message(),
                                    "; a larger field (--q) should help"));
    }
    MSAGG_ASSIGN_OR_RETURN(q, SmallestPrimeAtLeast(2 * q));
  }
}

std::optional<std::uint64_t> FirstPrimeAbove(std::uint64_t bound) {
  if (bound >= kMaxModulus) return std::nullopt;
  absl::StatusOr<std::uint64_t> p = SmallestPrimeAtLeast(bound + 1);
  if (!p.ok()) return std::nullopt;
  return *p;
}

}  // namespace

std::optional<std::uint64_t> AutoFieldModulus(Regime regime,
                                              const SecurityAnalysis& analysis,
                                              int total_users,
                                              const LpSolution* lp) {
  const std::uint64_t e = analysis.e_star;
  const std::uint64_t sbar = analysis.total_set.size();
  switch (regime) {
    case Regime::kCase1:
      return 2;
    case Regime::kCase2:
      return FirstPrimeAbove(SaturatingMul(e, SaturatingBinomial(sbar, e)));
    case Regime::kCase3:
      return FirstPrimeAbove(SaturatingMul(e, SaturatingBinomial(sbar + 1, e)));
    case Regime::kRemaining: {
      if (lp == nullptr || !lp->common_denominator.fits_ulong_p() ||
          !lp->p_bar.fits_ulong_p()) {
        return std::nullopt;
      }
      std::uint64_t qbar = lp->common_denominator.get_ui();
      std::uint64_t d = lp->p_bar.get_ui() + e * qbar;
      return FirstPrimeAbove(SaturatingMul(
          d, SaturatingBinomial(SaturatingMul(total_users, qbar), d)));
    }
  }
  return std::nullopt;
}

absl::StatusOr<UserId> OutsideUser(const Instance& instance,
                                   const SecurityAnalysis& analysis) {
  const Topology& topo = instance.topology;
  UserMask outside = topo.FullMask() & ~topo.MaskOf(analysis.q_set);
  if (outside == 0) {
    return KindError(absl::StatusCode::kFailedPrecondition, "NoOutsideUser",
                     "every user lies in Q");
  }
  return topo.UserAt(std::countr_zero(outside));
}

absl::StatusOr<KeyScheme> BuildCase1(const Instance& instance,
                                     const SecurityAnalysis& analysis,
                                     const BuildOptions& options) {
  MSAGG_RETURN_IF_ERROR(RequireRegime(instance, analysis, Regime::kCase1));
  const int k = instance.topology.total_users();
  std::optional<std::uint64_t> q = options.field_modulus.has_value()
                                       ? options.field_modulus
                                       : instance.field_modulus;
  MSAGG_ASSIGN_OR_RETURN(PrimeField field, PrimeField::Create(q.value_or(2)));
  KeyScheme scheme = EmptyScheme(field, k, 1, k - 1, Regime::kCase1);
  for (int i = 0; i < k - 1; ++i) {
    scheme.coeffs[i].at(0, i) = 1;
    scheme.coeffs[k - 1].at(0, i) = field.Neg(1);
  }
  MSAGG_RETURN_IF_ERROR(CheckSchemeConditions(instance, analysis, scheme, nullptr));
  return scheme;
}

namespace {

// Random rows on `random_users`, and the negated sum on `anchor`.
KeyScheme SampleSingleBlock(const PrimeField& field, int total_users, int dim,
                            Regime regime, UserMask random_users, int anchor,
                            Rng& rng) {
  KeyScheme scheme = EmptyScheme(field, total_users, 1, dim, regime);
  FMatrix sum(1, dim);
  for (UserMask m = random_users; m != 0; m &= m - 1) {
    int i = std::countr_zero(m);
    scheme.coeffs[i] = RandomMatrix(field, 1, dim, rng);
    sum = AddMatrices(field, sum, scheme.coeffs[i]);
  }
  scheme.coeffs[anchor] = NegateMatrix(field, sum);
  return scheme;
}

}  // namespace

absl::StatusOr<KeyScheme> BuildCase2(const Instance& instance,
                                     const SecurityAnalysis& analysis, Rng& rng,
                                     const BuildOptions& options) {
  MSAGG_RETURN_IF_ERROR(RequireRegime(instance, analysis, Regime::kCase2));
  const Topology& topo = instance.topology;
  const UserMask total = topo.MaskOf(analysis.total_set);
  const int anchor = 63 - std::countl_zero(total);  // last user of S-bar
  const UserMask random_users = total & ~(UserMask{1} << anchor);
  return SampleUntilValid(
      instance, analysis, nullptr,
      AutoFieldModulus(Regime::kCase2, analysis, topo.total_users(), nullptr),
      options, [&](const PrimeField& field) {
        return SampleSingleBlock(field, topo.total_users(), analysis.e_star,
                                 Regime::kCase2, random_users, anchor, rng);
      });
}

absl::StatusOr<KeyScheme> BuildCase3(const Instance& instance,
                                     const SecurityAnalysis& analysis, Rng& rng,
                                     const BuildOptions& options) {
  MSAGG_RETURN_IF_ERROR(RequireRegime(instance, analysis, Regime::kCase3));
  const Topology& topo = instance.topology;
  MSAGG_ASSIGN_OR_RETURN(UserId outside, OutsideUser(instance, analysis));
  const UserMask total = topo.MaskOf(analysis.total_set);
  const int anchor = topo.IndexOf(outside);
  return SampleUntilValid(
      instance, analysis, nullptr,
      AutoFieldModulus(Regime::kCase3, analysis, topo.total_users(), nullptr),
      options, [&](const PrimeField& field) {
        return SampleSingleBlock(field, topo.total_users(), analysis.e_star,
                                 Regime::kCase3, total, anchor, rng);
      });
}

absl::StatusOr<KeyScheme> BuildRemainingScheme(const Instance& instance,
                                                const SecurityAnalysis& analysis,
                                                const LpSolution& lp, Rng& rng,
                                                const BuildOptions& options) {
  MSAGG_RETURN_IF_ERROR(RequireRegime(instance, analysis, Regime::kRemaining));
  const Topology& topo = instance.topology;
  if (!lp.common_denominator.fits_sint_p() || !lp.p_bar.fits_sint_p()) {
    return KindError(absl::StatusCode::kOutOfRange, "Overflow",
                     "LP denominators too large for a block length");
  }
  const int qbar = static_cast<int>(lp.common_denominator.get_si());
  const int dim = static_cast<int>(lp.p_bar.get_si()) + analysis.e_star * qbar;
  const UserMask total = topo.MaskOf(analysis.total_set);
  if (total == 0) {
    return KindError(absl::StatusCode::kFailedPrecondition, "WrongRegime",
                     "empty total security set");
  }
  const int anchor = std::countr_zero(total);  // smallest user of S-bar

  // Variables of the LP are exactly the users outside S-bar, in order.
  std::map<int, int> p_of;
  UserMask vars = topo.FullMask() & ~total;
  for (std::size_t i = 0; vars != 0; ++i, vars &= vars - 1) {
    p_of[std::countr_zero(vars)] = static_cast<int>(lp.numerators[i].get_si());
  }

  return SampleUntilValid(
      instance, analysis, &lp,
      AutoFieldModulus(Regime::kRemaining, analysis, topo.total_users(), &lp),
      options, [&](const PrimeField& field) {
        KeyScheme scheme = EmptyScheme(field, topo.total_users(), qbar, dim,
                                       Regime::kRemaining);
        FMatrix sum(qbar, dim);
        for (int i = 0; i < topo.total_users(); ++i) {
          if (i == anchor) continue;
          if (total >> i & 1) {
            scheme.coeffs[i] = RandomMatrix(field, qbar, dim, rng);
          } else if (p_of[i] > 0) {
            FMatrix f = RandomMatrix(field, qbar, p_of[i], rng);
            FMatrix g = RandomMatrix(field, p_of[i], dim, rng);
            scheme.coeffs[i] = Multiply(field, f, g);
          }
          sum = AddMatrices(field, sum, scheme.coeffs[i]);
        }
        scheme.coeffs[anchor] = NegateMatrix(field, sum);
        return scheme;
      });
}

absl::StatusOr<KeyScheme> BuildScheme(const Instance& instance,
                                      const SecurityAnalysis& analysis,
                                      const LpSolution* lp, Rng& rng,
                                      const BuildOptions& options) {
  MSAGG_ASSIGN_OR_RETURN(
      Regime regime, ClassifyRegime(analysis, instance.topology.total_users()));
  switch (regime) {
    case Regime::kCase1:
      return BuildCase1(instance, analysis, options);
    case Regime::kCase2:
      return BuildCase2(instance, analysis, rng, options);
    case Regime::kCase3:
      return BuildCase3(instance, analysis, rng, options);
    case Regime::kRemaining:
      if (lp == nullptr) {
        return KindError(absl::StatusCode::kFailedPrecondition, "MissingBStar",
                         "remaining regime needs the LP solution");
      }
      return BuildRemainingScheme(instance, analysis, *lp, rng, options);
  }
  return absl::InternalError("unreachable");
}

absl::Status CheckSchemeConditions(const Instance& instance,
                                   const SecurityAnalysis& analysis,
                                   const KeyScheme& scheme,
                                   const LpSolution* lp) {
  const Topology& topo = instance.topology;
  const int k = topo.total_users();
  MSAGG_RETURN_IF_ERROR(CheckShape(scheme, k));
  MSAGG_RETURN_IF_ERROR(CheckZeroSum(scheme));

  switch (scheme.regime) {
    case Regime::kCase1:
      MSAGG_RETURN_IF_ERROR(CheckRowSubsets(scheme, topo.FullMask(), k - 1, topo));
      break;
    case Regime::kCase2:
    case Regime::kCase3: {
      UserMask keyed = NonzeroUsers(scheme);
      int size = std::min(analysis.e_star, std::popcount(keyed) - 1);
      if (size > 0) MSAGG_RETURN_IF_ERROR(CheckRowSubsets(scheme, keyed, size, topo));
      break;
    }
    case Regime::kRemaining: {
      if (lp == nullptr) break;
      const UserMask total = topo.MaskOf(analysis.total_set);
      std::size_t var = 0;
      for (int i = 0; i < k; ++i) {
        int want = scheme.block_len;
        if (!(total >> i & 1)) {
          want = static_cast<int>(lp->numerators[var++].get_si());
        }
        int got = Rank(scheme.field, scheme.coeffs[i]);
        if (got != want) {
          return Violation(absl::StrCat("key of ", UserToString(topo.UserAt(i)),
                                        " has rank ", got, ", need ", want));
        }
      }
      break;
    }
  }
  return CheckTripleIdentity(instance, scheme);
}

absl::StatusOr<Rational> AchievableRate(const SecurityAnalysis& analysis,
                                        int total_users, const LpSolution* lp) {
  std::optional<Rational> b_star;
  if (lp != nullptr) b_star = lp->objective;
  MSAGG_ASSIGN_OR_RETURN(RateReport report,
                         KeyRateBounds(analysis, total_users, b_star));
  return report.key_rate_upper;
}

absl::Status CheckInjectedScheme(const Instance& instance,
                                 const SecurityAnalysis& analysis,
                                 const KeyScheme& scheme, const LpSolution* lp) {
  const int k = instance.topology.total_users();
  MSAGG_ASSIGN_OR_RETURN(Regime regime, ClassifyRegime(analysis, k));
  if (regime != scheme.regime) return WrongRegime(regime, scheme.regime);
  MSAGG_ASSIGN_OR_RETURN(Rational rate, AchievableRate(analysis, k, lp));
  Rational claimed(scheme.source_dim, scheme.block_len);
  claimed.canonicalize();
  if (claimed != rate || scheme.claimed_rate != rate) {
    return KindError(absl::StatusCode::kFailedPrecondition, "RateMismatch",
                     absl::StrCat("scheme rate ", RationalToString(claimed),
                                  " (claimed ",
                                  RationalToString(scheme.claimed_rate),
                                  ") differs from ", RationalToString(rate)));
  }
  return CheckSchemeConditions(instance, analysis, scheme, lp);
}

}  // namespace msagg
