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

#ifndef MSAGG_GENERATOR_H_
#define MSAGG_GENERATOR_H_

#include "msagg/model.h"
#include "msagg/rng.h"

namespace msagg {

struct GeneratorOptions {
  int min_servers = 3;
  int max_servers = 5;
  int max_users_per_server = 3;
  int max_security_generators = 2;
  int max_security_size = 4;
  int max_collusion_generators = 5;
  int max_collusion_size = 6;
};

// Random instance satisfying ValidateInstance's constraints. The seed field
// of the result is drawn from `rng` as well.
RawInstance GenerateInstance(Rng& rng, const GeneratorOptions& options = {});

}  // namespace msagg

#endif  // MSAGG_GENERATOR_H_
