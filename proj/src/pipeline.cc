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

#include "msagg/pipeline.h"

#include <chrono>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "msagg/json_io.h"
#include "msagg/rng.h"
#include "msagg/scheme_builder.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

absl::Status InStage(const absl::Status& status, absl::string_view stage) {
  return absl::Status(status.code(),
                      absl::StrCat(status.message(), " (stage ", stage, ")"));
}

class StageTimer {
 public:
  StageTimer(std::map<std::string, double>& sink, std::string name)
      : sink_(sink), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~StageTimer() {
    sink_[name_] = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  }

 private:
  std::map<std::string, double>& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

SimulationSummary SimulateTrials(const Topology& topology,
                                 const KeyScheme& scheme, int trials,
                                 std::uint64_t seed) {
  SimulationSummary out;
  out.trials = trials;
  Rng root = Rng(seed).Split(kSimulateStream);
  for (int i = 0; i < trials; ++i) {
    Rng rng = root.Split(static_cast<std::uint64_t>(i));
    Transcript t = RunProtocol(topology, scheme, rng);
    CorrectnessReport c = CheckCorrectness(topology, scheme, t);
    if (c.ok) {
      ++out.passed;
    } else if (!out.first_failure.has_value()) {
      out.first_failure = std::move(t);
      out.first_failure_servers = c.failing_servers;
    }
  }
  return out;
}

std::string InstanceDigest(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : SerializeInstance(instance)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return absl::StrFormat("%016x", h);
}

absl::StatusOr<RateContext> ComputeRates(const Instance& instance,
                                         const SecurityAnalysis& analysis) {
  RateContext ctx;
  ctx.analysis = analysis;
  const int k = instance.topology.total_users();
  MSAGG_ASSIGN_OR_RETURN(ctx.regime, ClassifyRegime(analysis, k));
  std::optional<Rational> b_star;
  if (ctx.regime == Regime::kRemaining) {
    MSAGG_ASSIGN_OR_RETURN(ctx.lp_problem, BuildLp(instance, analysis));
    MSAGG_ASSIGN_OR_RETURN(ctx.lp_solution, SolveLp(*ctx.lp_problem));
    b_star = ctx.lp_solution->objective;
  }
  MSAGG_ASSIGN_OR_RETURN(ctx.rate, KeyRateBounds(analysis, k, b_star));
  return ctx;
}

absl::StatusOr<RunReport> RunPipeline(const Instance& instance,
                                      const PipelineOptions& options) {
  RunReport report;
  report.instance_digest = InstanceDigest(instance);
  report.seed = options.seed.value_or(instance.seed);
  const Topology& topo = instance.topology;

  {
    StageTimer timer(report.timings_ms, "analyze");
    report.analysis = Analyze(instance);
  }
  {
    StageTimer timer(report.timings_ms, "rate");
    absl::StatusOr<RateContext> ctx = ComputeRates(instance, report.analysis);
    if (!ctx.ok()) {
      bool in_lp = HasKind(ctx.status(), "InfeasibleConstraint") ||
                   HasKind(ctx.status(), "CertificateFailure");
      return InStage(ctx.status(), in_lp ? "lp" : "rate");
    }
    report.rate = ctx->rate;
    report.lp_problem = ctx->lp_problem;
    report.lp_solution = ctx->lp_solution;
  }
  const LpSolution* lp =
      report.lp_solution.has_value() ? &*report.lp_solution : nullptr;
  {
    StageTimer timer(report.timings_ms, "scheme");
    if (options.injected.has_value()) {
      absl::Status st =
          CheckInjectedScheme(instance, report.analysis, *options.injected, lp);
      if (!st.ok()) return InStage(st, "scheme");
      report.scheme = options.injected;
    } else {
      BuildOptions build;
      build.field_modulus = options.field_modulus;
      build.retry_cap = options.retry_cap;
      Rng rng = Rng(report.seed).Split(kSchemeStream);
      absl::StatusOr<KeyScheme> scheme =
          BuildScheme(instance, report.analysis, lp, rng, build);
      if (!scheme.ok()) return InStage(scheme.status(), "scheme");
      report.scheme = *std::move(scheme);
    }
  }
  {
    StageTimer timer(report.timings_ms, "simulate");
    report.simulation =
        SimulateTrials(topo, *report.scheme, options.trials, report.seed);
  }
  {
    StageTimer timer(report.timings_ms, "verify");
    absl::StatusOr<SecurityReport> sec = VerifyAll(instance, *report.scheme);
    if (!sec.ok()) return InStage(sec.status(), "verify");
    report.security = *std::move(sec);
  }
  return report;
}

nlohmann::json RunReportToJson(const RunReport& report, const Topology& topology,
                               bool include_timings) {
  nlohmann::json j;
  j["instance_digest"] = report.instance_digest;
  j["seed"] = report.seed;
  j["analysis"] = AnalysisToJson(report.analysis);
  j["rate"] = RateToJson(report.rate);
  if (report.lp_problem.has_value()) {
    j["lp"] = LpToJson(*report.lp_problem,
                       report.lp_solution.has_value() ? &*report.lp_solution
                                                      : nullptr);
  }
  if (report.scheme.has_value()) {
    const KeyScheme& s = *report.scheme;
    j["scheme"] = {{"q", s.field.modulus()},
                   {"L", s.block_len},
                   {"source_dim", s.source_dim},
                   {"rate", RationalToString(s.claimed_rate)}};
  }
  nlohmann::json sim = {{"trials", report.simulation.trials},
                        {"passed", report.simulation.passed}};
  if (report.simulation.first_failure.has_value()) {
    sim["first_failure"] =
        TranscriptToJson(*report.simulation.first_failure, topology);
    sim["failing_servers"] = report.simulation.first_failure_servers;
  }
  j["simulation"] = sim;
  j["security"] = SecurityReportToJson(report.security);
  j["ok"] = report.ok();
  if (include_timings) j["timings_ms"] = report.timings_ms;
  return j;
}

}  // namespace msagg
