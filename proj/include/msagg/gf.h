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

#ifndef MSAGG_GF_H_
#define MSAGG_GF_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace msagg {

// Largest supported modulus (a Mersenne prime). Keeps every product of two
// residues inside unsigned __int128.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 61) - 1;

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool IsPrime(std::uint64_t n);

// Smallest prime >= n. Overflow when that prime would exceed kMaxModulus.
absl::StatusOr<std::uint64_t> SmallestPrimeAtLeast(std::uint64_t n);

// C(n, k), saturating at UINT64_MAX.
std::uint64_t SaturatingBinomial(std::uint64_t n, std::uint64_t k);
// a * b, saturating at UINT64_MAX.
std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b);

class PrimeField {
 public:
  using Elem = std::uint64_t;

  // BadModulus unless q is a prime <= kMaxModulus.
  static absl::StatusOr<PrimeField> Create(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }

  Elem Reduce(std::int64_t x) const;
  Elem Add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem Sub(Elem a, Elem b) const { return a >= b ? a - b : a + q_ - b; }
  Elem Neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
  Elem Mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % q_);
  }
  // DivisionByZero for a == 0.
  absl::StatusOr<Elem> Inv(Elem a) const;

  bool operator==(const PrimeField& other) const = default;

 private:
  explicit PrimeField(std::uint64_t q) : q_(q) {}
  std::uint64_t q_;
};

// Dense row-major matrix of residues. Entries are kept in [0, q) by the
// producing code; the matrix itself does not know q.
struct FMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> data;

  FMatrix() = default;
  FMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0) {}

  static FMatrix Identity(int n);
  static FMatrix FromRows(const std::vector<std::vector<std::uint64_t>>& rows);

  std::uint64_t& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  std::uint64_t at(int r, int c) const { return data[std::size_t(r) * cols + c]; }

  std::vector<std::uint64_t> Row(int r) const;
  void AppendRow(const std::vector<std::uint64_t>& row);
  bool IsZero() const;
  std::vector<std::vector<std::uint64_t>> ToRows() const;
  std::string DebugString() const;

  bool operator==(const FMatrix& other) const = default;
};

// DimensionMismatch when column counts differ. Empty blocks (0 rows) are
// accepted whatever their column count.
absl::StatusOr<FMatrix> VStack(const std::vector<FMatrix>& blocks);

FMatrix Multiply(const PrimeField& f, const FMatrix& a, const FMatrix& b);
FMatrix AddMatrices(const PrimeField& f, const FMatrix& a, const FMatrix& b);
FMatrix NegateMatrix(const PrimeField& f, const FMatrix& a);
std::vector<std::uint64_t> MultiplyVector(const PrimeField& f, const FMatrix& a,
                                          const std::vector<std::uint64_t>& x);

// Rank over F_q by Gaussian elimination on a copy.
int Rank(const PrimeField& f, const FMatrix& m);

// Rank of the vertical concatenation of `blocks`.
absl::StatusOr<int> StackRank(const PrimeField& f,
                              const std::vector<FMatrix>& blocks);

// Uniformly random matrix; `rng.UniformBelow(q)` must be uniform on [0, q).
template <typename Rng>
FMatrix RandomMatrix(const PrimeField& f, int rows, int cols, Rng& rng) {
  FMatrix m(rows, cols);
  for (auto& x : m.data) x = rng.UniformBelow(f.modulus());
  return m;
}

}  // namespace msagg

#endif  // MSAGG_GF_H_
