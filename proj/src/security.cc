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

#include "msagg/security.h"

#include <algorithm>
#include <bit>
#include <tuple>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "msagg/protocol.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

absl::Status CheckCols(const FMatrix& m, int cols, const char* name) {
  if (m.rows > 0 && m.cols != cols) {
    return KindError(absl::StatusCode::kInvalidArgument, "DimensionMismatch",
                     absl::StrCat("block ", name, " has ", m.cols,
                                  " columns, source has ", cols));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MiTerms> ConditionalMiTerms(const PrimeField& field,
                                           const LinearView& view) {
  MSAGG_RETURN_IF_ERROR(CheckCols(view.a, view.source_dim, "A"));
  MSAGG_RETURN_IF_ERROR(CheckCols(view.b, view.source_dim, "B"));
  MSAGG_RETURN_IF_ERROR(CheckCols(view.c, view.source_dim, "C"));
  MiTerms t;
  MSAGG_ASSIGN_OR_RETURN(t.rank_ac, StackRank(field, {view.a, view.c}));
  MSAGG_ASSIGN_OR_RETURN(t.rank_bc, StackRank(field, {view.b, view.c}));
  MSAGG_ASSIGN_OR_RETURN(t.rank_abc, StackRank(field, {view.a, view.b, view.c}));
  t.rank_c = Rank(field, view.c);
  t.mi = t.rank_ac + t.rank_bc - t.rank_abc - t.rank_c;
  return t;
}

absl::StatusOr<int> ConditionalMiRank(const PrimeField& field,
                                      const LinearView& view) {
  MSAGG_ASSIGN_OR_RETURN(MiTerms t, ConditionalMiTerms(field, view));
  return t.mi;
}

LinearView BuildLinearView(const Topology& topology, const KeyScheme& scheme,
                           int k, UserMask secrets, UserMask colluders) {
  LinearView v;
  v.source_dim = JointDim(topology, scheme);
  v.a = ViewRows(topology, scheme, k);
  v.b = SecretRows(topology, scheme, secrets);
  v.c = SideRows(topology, scheme, colluders);
  return v;
}

absl::StatusOr<SecurityReport> VerifyAll(const Instance& instance,
                                         const KeyScheme& scheme) {
  const Topology& topo = instance.topology;
  const PrimeField& f = scheme.field;
  const int servers = topo.server_count();
  const int ms = static_cast<int>(instance.security.size());
  const int ns = static_cast<int>(instance.collusion.size());

  std::vector<FMatrix> views;
  for (int k = 1; k <= servers; ++k) views.push_back(ViewRows(topo, scheme, k));
  std::vector<FMatrix> secrets;
  for (int m = 0; m < ms; ++m) {
    secrets.push_back(SecretRows(topo, scheme, instance.security.closure_masks[m]));
  }

  SecurityReport report;
  for (int n = 0; n < ns; ++n) {
    FMatrix side = SideRows(topo, scheme, instance.collusion.closure_masks[n]);
    const int rank_c = Rank(f, side);
    std::vector<int> rank_ac(servers);
    for (int k = 0; k < servers; ++k) {
      MSAGG_ASSIGN_OR_RETURN(rank_ac[k], StackRank(f, {views[k], side}));
    }
    for (int m = 0; m < ms; ++m) {
      MSAGG_ASSIGN_OR_RETURN(int rank_bc, StackRank(f, {secrets[m], side}));
      for (int k = 0; k < servers; ++k) {
        MSAGG_ASSIGN_OR_RETURN(int rank_abc,
                               StackRank(f, {views[k], secrets[m], side}));
        ++report.triples_checked;
        int mi = rank_ac[k] + rank_bc - rank_abc - rank_c;
        if (mi != 0) report.violations.push_back({k + 1, m, n, mi});
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const SecurityViolation& x, const SecurityViolation& y) {
              return std::tie(x.k, x.m, x.n) < std::tie(y.k, y.m, y.n);
            });
  return report;
}

namespace {

// Counts how often each value of a block-combination occurs.
class SupportCounter {
 public:
  explicit SupportCounter(int bits_per_symbol) : bits_(bits_per_symbol) {}

  void Add(const std::vector<const Symbols*>& parts) {
    std::vector<std::uint64_t> key;
    std::uint64_t word = 0;
    int used = 0;
    for (const Symbols* p : parts) {
      for (std::uint64_t s : *p) {
        if (used + bits_ > 64) {
          key.push_back(word);
          word = 0;
          used = 0;
        }
        word |= s << used;
        used += bits_;
      }
    }
    key.push_back(word);
    ++counts_[key];
  }

  // log_q of the support size, or an error when the distribution is not
  // uniform on its support or the support is not a power of q.
  absl::StatusOr<int> UniformEntropy(std::uint64_t q, std::uint64_t total) const {
    std::uint64_t support = counts_.size();
    for (const auto& [key, c] : counts_) {
      if (c * support != total) {
        return KindError(absl::StatusCode::kInternal, "NonUniform",
                         "joint distribution is not uniform on its support");
      }
    }
    int r = 0;
    std::uint64_t s = 1;
    while (s < support) {
      s *= q;
      ++r;
    }
    if (s != support) {
      return KindError(absl::StatusCode::kInternal, "NonUniform",
                       "support size is not a power of q");
    }
    return r;
  }

 private:
  int bits_;
  absl::flat_hash_map<std::vector<std::uint64_t>, std::uint64_t> counts_;
};

}  // namespace

absl::StatusOr<int> EntropyOracle(const PrimeField& field,
                                  const LinearView& view, std::uint64_t cap) {
  MSAGG_RETURN_IF_ERROR(CheckCols(view.a, view.source_dim, "A"));
  MSAGG_RETURN_IF_ERROR(CheckCols(view.b, view.source_dim, "B"));
  MSAGG_RETURN_IF_ERROR(CheckCols(view.c, view.source_dim, "C"));
  const std::uint64_t q = field.modulus();
  const int d = view.source_dim;
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > cap / q) {
      return KindError(absl::StatusCode::kResourceExhausted, "TooLarge",
                       absl::StrCat(q, "^", d, " realizations exceed cap ", cap));
    }
    total *= q;
  }
  if (total > cap) {
    return KindError(absl::StatusCode::kResourceExhausted, "TooLarge",
                     absl::StrCat(q, "^", d, " realizations exceed cap ", cap));
  }

  const FMatrix* blocks[3] = {&view.a, &view.b, &view.c};
  Symbols values[3];
  for (int b = 0; b < 3; ++b) values[b].assign(blocks[b]->rows, 0);
  const int bits = std::bit_width(q - 1);
  SupportCounter ac(bits), bc(bits), abc(bits), c(bits);

  // Odometer over F_q^d. Adding a column q times is the identity, so carrying
  // a digit needs no correction.
  std::vector<std::uint64_t> digits(d, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    ac.Add({&values[0], &values[2]});
    bc.Add({&values[1], &values[2]});
    abc.Add({&values[0], &values[1], &values[2]});
    c.Add({&values[2]});
    for (int j = 0; j < d; ++j) {
      for (int b = 0; b < 3; ++b) {
        for (int r = 0; r < blocks[b]->rows; ++r) {
          values[b][r] = field.Add(values[b][r], blocks[b]->at(r, j));
        }
      }
      if (++digits[j] < q) break;
      digits[j] = 0;
    }
  }
  MSAGG_ASSIGN_OR_RETURN(int h_ac, ac.UniformEntropy(q, total));
  MSAGG_ASSIGN_OR_RETURN(int h_bc, bc.UniformEntropy(q, total));
  MSAGG_ASSIGN_OR_RETURN(int h_abc, abc.UniformEntropy(q, total));
  MSAGG_ASSIGN_OR_RETURN(int h_c, c.UniformEntropy(q, total));
  return h_ac + h_bc - h_abc - h_c;
}

}  // namespace msagg
