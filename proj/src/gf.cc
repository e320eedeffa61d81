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

#include "msagg/gf.h"

#include <algorithm>
#include <limits>
#include <tuple>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

using u128 = unsigned __int128;

std::uint64_t PowMod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::uint64_t>(u128(r) * a % m);
    a = static_cast<std::uint64_t>(u128(a) * a % m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is exact below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(u128(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

absl::StatusOr<std::uint64_t> SmallestPrimeAtLeast(std::uint64_t n) {
  if (n < 2) n = 2;
  for (std::uint64_t c = n; c <= kMaxModulus; ++c) {
    if (IsPrime(c)) return c;
  }
  return KindError(absl::StatusCode::kOutOfRange, "Overflow",
                   absl::StrCat("no supported prime >= ", n,
                                "; moduli are limited to 2^61-1"));
}

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  u128 p = u128(a) * b;
  return p > std::numeric_limits<std::uint64_t>::max()
             ? std::numeric_limits<std::uint64_t>::max()
             : static_cast<std::uint64_t>(p);
}

std::uint64_t SaturatingBinomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact; r <= kMax keeps the product in 128 bits.
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

absl::StatusOr<PrimeField> PrimeField::Create(std::uint64_t q) {
  if (q < 2 || q > kMaxModulus || !IsPrime(q)) {
    return KindError(absl::StatusCode::kInvalidArgument, "BadModulus",
                     absl::StrCat(q, " is not a prime in [2, 2^61-1]"));
  }
  return PrimeField(q);
}

PrimeField::Elem PrimeField::Reduce(std::int64_t x) const {
  std::int64_t q = static_cast<std::int64_t>(q_);
  std::int64_t r = x % q;
  return static_cast<Elem>(r < 0 ? r + q : r);
}

absl::StatusOr<PrimeField::Elem> PrimeField::Inv(Elem a) const {
  if (a % q_ == 0) {
    return KindError(absl::StatusCode::kInvalidArgument, "DivisionByZero",
                     "inverse of 0");
  }
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a % q_;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quot * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quot * new_r);
  }
  if (t < 0) t += q_;
  return static_cast<Elem>(t);
}

FMatrix FMatrix::Identity(int n) {
  FMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FMatrix FMatrix::FromRows(const std::vector<std::vector<std::uint64_t>>& rows) {
  FMatrix m(static_cast<int>(rows.size()),
            rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::uint64_t> FMatrix::Row(int r) const {
  return std::vector<std::uint64_t>(data.begin() + std::size_t(r) * cols,
                                    data.begin() + std::size_t(r + 1) * cols);
}

void FMatrix::AppendRow(const std::vector<std::uint64_t>& row) {
  if (rows == 0) cols = static_cast<int>(row.size());
  data.insert(data.end(), row.begin(), row.end());
  ++rows;
}

bool FMatrix::IsZero() const {
  for (auto x : data) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> FMatrix::ToRows() const {
  std::vector<std::vector<std::uint64_t>> out;
  for (int r = 0; r < rows; ++r) out.push_back(Row(r));
  return out;
}

std::string FMatrix::DebugString() const {
  std::string out = "[";
  for (int r = 0; r < rows; ++r) {
    absl::StrAppend(&out, r ? "," : "", "[", absl::StrJoin(Row(r), ","), "]");
  }
  return out + "]";
}

absl::StatusOr<FMatrix> VStack(const std::vector<FMatrix>& blocks) {
  int cols = -1;
  std::size_t total_rows = 0;
  for (const FMatrix& b : blocks) {
    if (b.rows == 0) continue;
    if (cols >= 0 && b.cols != cols) {
      return KindError(absl::StatusCode::kInvalidArgument, "DimensionMismatch",
                       absl::StrCat("column counts ", cols, " and ", b.cols));
    }
    cols = b.cols;
    total_rows += b.rows;
  }
  if (cols < 0) {
    for (const FMatrix& b : blocks) cols = std::max(cols, b.cols);
    return FMatrix(0, std::max(cols, 0));
  }
  FMatrix out;
  out.rows = static_cast<int>(total_rows);
  out.cols = cols;
  out.data.reserve(total_rows * cols);
  for (const FMatrix& b : blocks) {
    out.data.insert(out.data.end(), b.data.begin(), b.data.end());
  }
  return out;
}

FMatrix Multiply(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
  FMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      std::uint64_t x = a.at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j) {
        out.at(i, j) = f.Add(out.at(i, j), f.Mul(x, b.at(k, j)));
      }
    }
  }
  return out;
}

FMatrix AddMatrices(const PrimeField& f, const FMatrix& a, const FMatrix& b) {
  FMatrix out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = f.Add(out.data[i], b.data[i]);
  }
  return out;
}

FMatrix NegateMatrix(const PrimeField& f, const FMatrix& a) {
  FMatrix out = a;
  for (auto& x : out.data) x = f.Neg(x);
  return out;
}

std::vector<std::uint64_t> MultiplyVector(const PrimeField& f, const FMatrix& a,
                                          const std::vector<std::uint64_t>& x) {
  std::vector<std::uint64_t> out(a.rows, 0);
  for (int i = 0; i < a.rows; ++i) {
    std::uint64_t acc = 0;
    for (int j = 0; j < a.cols; ++j) acc = f.Add(acc, f.Mul(a.at(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

int Rank(const PrimeField& f, const FMatrix& m) {
  FMatrix a = m;
  int rank = 0;
  for (int c = 0; c < a.cols && rank < a.rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < a.rows; ++r) {
      if (a.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = c; j < a.cols; ++j) std::swap(a.at(pivot, j), a.at(rank, j));
    }
    std::uint64_t inv = *f.Inv(a.at(rank, c));
    for (int j = c; j < a.cols; ++j) a.at(rank, j) = f.Mul(a.at(rank, j), inv);
    for (int r = rank + 1; r < a.rows; ++r) {
      std::uint64_t factor = a.at(r, c);
      if (factor == 0) continue;
      for (int j = c; j < a.cols; ++j) {
        a.at(r, j) = f.Sub(a.at(r, j), f.Mul(factor, a.at(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

absl::StatusOr<int> StackRank(const PrimeField& f,
                              const std::vector<FMatrix>& blocks) {
  MSAGG_ASSIGN_OR_RETURN(FMatrix stacked, VStack(blocks));
  return Rank(f, stacked);
}

}  // namespace msagg
