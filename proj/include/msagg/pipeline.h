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

#ifndef MSAGG_PIPELINE_H_
#define MSAGG_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "msagg/combinatorics.h"
#include "msagg/key_scheme.h"
#include "msagg/lp.h"
#include "msagg/protocol.h"
#include "msagg/rates.h"
#include "msagg/security.h"

namespace msagg {

// Randomness derivation from one 64-bit seed s:
//   scheme sampling      Rng(s).Split(kSchemeStream)
//   simulation trial i   Rng(s).Split(kSimulateStream).Split(i)

struct SimulationSummary {
  int trials = 0;
  int passed = 0;
  std::optional<Transcript> first_failure;
  std::vector<int> first_failure_servers;
};

SimulationSummary SimulateTrials(const Topology& topology,
                                 const KeyScheme& scheme, int trials,
                                 std::uint64_t seed);

struct PipelineOptions {
  int trials = 100;
  std::optional<std::uint64_t> seed;           // overrides the instance seed
  std::optional<std::uint64_t> field_modulus;  // overrides the instance field
  std::optional<KeyScheme> injected;           // skip sampling, check this one
  int retry_cap = 64;
};

struct RunReport {
  std::string instance_digest;
  std::uint64_t seed = 0;
  SecurityAnalysis analysis;
  RateReport rate;
  std::optional<LpProblem> lp_problem;
  std::optional<LpSolution> lp_solution;
  std::optional<KeyScheme> scheme;
  SimulationSummary simulation;
  SecurityReport security;
  std::map<std::string, double> timings_ms;

  bool ok() const {
    return simulation.passed == simulation.trials && security.violations.empty();
  }
};

// FNV-1a of the serialized instance, as 16 hex digits.
std::string InstanceDigest(const Instance& instance);

// analyze -> rate (with lp in the remaining regime) -> scheme -> simulate ->
// verify. Errors carry the failing stage name in their message.
absl::StatusOr<RunReport> RunPipeline(const Instance& instance,
                                      const PipelineOptions& options = {});

// Analysis, LP (when the regime needs it) and rate report in one step.
struct RateContext {
  SecurityAnalysis analysis;
  Regime regime = Regime::kCase1;
  std::optional<LpProblem> lp_problem;
  std::optional<LpSolution> lp_solution;
  RateReport rate;
};
absl::StatusOr<RateContext> ComputeRates(const Instance& instance,
                                         const SecurityAnalysis& analysis);

nlohmann::json RunReportToJson(const RunReport& report, const Topology& topology,
                               bool include_timings = true);

}  // namespace msagg

#endif  // MSAGG_PIPELINE_H_
