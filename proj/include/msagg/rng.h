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

#ifndef MSAGG_RNG_H_
#define MSAGG_RNG_H_

#include <cstdint>
#include <random>

namespace msagg {

// Stream ids used when splitting the instance seed.
inline constexpr std::uint64_t kSchemeStream = 1;
inline constexpr std::uint64_t kSimulateStream = 2;

std::uint64_t SplitMix64(std::uint64_t x);

// Deterministic splittable generator. Split() depends only on the seed this
// generator was built from and the stream id, never on how many values were
// drawn, so derived streams are stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(SplitMix64(seed)) {}

  Rng Split(std::uint64_t stream) const {
    return Rng(SplitMix64(seed_ ^ SplitMix64(stream + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, n); n > 0. Rejection sampling, so the output sequence is
  // the same on every standard library.
  std::uint64_t UniformBelow(std::uint64_t n) {
    if ((n & (n - 1)) == 0) return engine_() & (n - 1);
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n) - 1;
    // [0, limit] holds a whole number of copies of [0, n).
    for (;;) {
      std::uint64_t x = engine_();
      if (x <= limit) return x % n;
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace msagg

#endif  // MSAGG_RNG_H_
