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

#include "msagg/generator.h"

#include <algorithm>
#include <utility>

namespace msagg {
namespace {

int UniformIn(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.UniformBelow(hi - lo + 1));
}

UserSet RandomSubset(Rng& rng, const UserSet& all, int size) {
  UserSet pool = all;
  // Partial Fisher-Yates.
  for (int i = 0; i < size; ++i) {
    int j = i + static_cast<int>(rng.UniformBelow(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  Canonicalize(pool);
  return pool;
}

}  // namespace

RawInstance GenerateInstance(Rng& rng, const GeneratorOptions& options) {
  RawInstance raw;
  const int servers = UniformIn(rng, options.min_servers, options.max_servers);
  for (int u = 0; u < servers; ++u) {
    raw.servers.push_back(UniformIn(rng, 1, options.max_users_per_server));
  }
  int k = 0;
  UserSet all;
  for (int u = 1; u <= servers; ++u) {
    for (int v = 1; v <= raw.servers[u - 1]; ++v) all.push_back({u, v});
    k += raw.servers[u - 1];
  }

  const int s_count = UniformIn(rng, 1, options.max_security_generators);
  for (int i = 0; i < s_count; ++i) {
    int size = UniformIn(rng, 1, std::min(k, options.max_security_size));
    raw.security_generators.push_back(RandomSubset(rng, all, size));
  }
  const int t_count = UniformIn(rng, 0, options.max_collusion_generators);
  for (int i = 0; i < t_count; ++i) {
    int size = UniformIn(rng, 0, std::min(k - 2, options.max_collusion_size));
    raw.collusion_generators.push_back(RandomSubset(rng, all, size));
  }
  raw.seed = rng.Next();
  return raw;
}

}  // namespace msagg
