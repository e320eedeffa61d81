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

// Command-line front end: validate, analyze, rate, lp, scheme, simulate,
// verify, pipeline, gen.
//
// Exit codes: 0 success, 1 correctness or security violations, 2 unreadable
// or invalid input, 3 a pipeline stage failed.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "msagg/combinatorics.h"
#include "msagg/generator.h"
#include "msagg/json_io.h"
#include "msagg/model.h"
#include "msagg/pipeline.h"
#include "msagg/scheme_builder.h"
#include "msagg/status_macros.h"

namespace msagg {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;
constexpr int kExitStage = 3;

// MSAGG_LOG_LEVEL=error|warn|info|debug, default warn.
enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

Level LogLevel() {
  static const Level level = [] {
    const char* env = std::getenv("MSAGG_LOG_LEVEL");
    std::string v = env ? env : "";
    if (v == "error") return Level::kError;
    if (v == "info") return Level::kInfo;
    if (v == "debug") return Level::kDebug;
    return Level::kWarn;
  }();
  return level;
}

void Log(Level level, const std::string& message) {
  static const char* kNames[] = {"E", "W", "I", "D"};
  if (level <= LogLevel()) {
    std::cerr << kNames[static_cast<int>(level)] << " msagg: " << message << "\n";
  }
}

struct Common {
  std::string instance_path;
  bool json_out = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> q;
  std::string inject_path;
  std::string analysis_path;
  int trials = 100;
};

int Fail(int code, const absl::Status& status) {
  std::cerr << "msagg: " << status.message() << "\n";
  return code;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return KindError(absl::StatusCode::kNotFound, "ParseError",
                     absl::StrCat("cannot open ", path));
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<Instance> LoadInstance(const Common& c) {
  MSAGG_ASSIGN_OR_RETURN(std::string text, ReadFile(c.instance_path));
  absl::StatusOr<Instance> instance = ParseInstance(text);
  if (!instance.ok()) {
    return absl::Status(instance.status().code(),
                        absl::StrCat(c.instance_path, ": ",
                                     instance.status().message()));
  }
  Log(Level::kInfo, absl::StrCat("loaded ", c.instance_path, ", K=",
                                 instance->topology.total_users(), ", |S|=",
                                 instance->security.size(), ", |T|=",
                                 instance->collusion.size()));
  return instance;
}

std::string Users(const UserSet& s) {
  return s.empty() ? "{}" : UserSetToString(s);
}

void PrintRow(const std::string& key, const std::string& value) {
  std::printf("  %-22s %s\n", key.c_str(), value.c_str());
}

void PrintJson(const json& j) { std::cout << j.dump(2) << "\n"; }

// Analysis from --analysis when given (checked against the instance),
// computed otherwise.
absl::StatusOr<SecurityAnalysis> LoadOrAnalyze(const Common& c,
                                               const Instance& instance,
                                               int* exit_code) {
  if (c.analysis_path.empty()) return Analyze(instance);
  *exit_code = kExitInput;
  MSAGG_ASSIGN_OR_RETURN(std::string text, ReadFile(c.analysis_path));
  MSAGG_ASSIGN_OR_RETURN(json j, ParseJsonText(text));
  if (j.contains("analysis")) j = j["analysis"];
  MSAGG_ASSIGN_OR_RETURN(SecurityAnalysis a, AnalysisFromJson(j));
  MSAGG_RETURN_IF_ERROR(CheckAnalysis(instance, a));
  *exit_code = kExitStage;
  return a;
}

// Scheme from --inject, or built from the seed.
absl::StatusOr<KeyScheme> ObtainScheme(const Common& c, const Instance& instance,
                                       const RateContext& ctx, int* exit_code) {
  const LpSolution* lp = ctx.lp_solution ? &*ctx.lp_solution : nullptr;
  if (!c.inject_path.empty()) {
    *exit_code = kExitInput;
    MSAGG_ASSIGN_OR_RETURN(std::string text, ReadFile(c.inject_path));
    MSAGG_ASSIGN_OR_RETURN(json j, ParseJsonText(text));
    MSAGG_ASSIGN_OR_RETURN(KeyScheme scheme,
                           SchemeFromJson(j, instance.topology, ctx.regime));
    *exit_code = kExitStage;
    MSAGG_RETURN_IF_ERROR(CheckInjectedScheme(instance, ctx.analysis, scheme, lp));
    return scheme;
  }
  *exit_code = kExitStage;
  BuildOptions options;
  options.field_modulus = c.q;
  Rng rng = Rng(c.seed.value_or(instance.seed)).Split(kSchemeStream);
  return BuildScheme(instance, ctx.analysis, lp, rng, options);
}

int CmdValidate(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  if (c.json_out) {
    PrintJson({{"valid", true},
               {"servers", instance->topology.users_per_server()},
               {"K", instance->topology.total_users()},
               {"security_sets", instance->security.size()},
               {"collusion_sets", instance->collusion.size()},
               {"digest", InstanceDigest(*instance)}});
  } else {
    std::printf("valid instance\n");
    PrintRow("servers", absl::StrJoin(instance->topology.users_per_server(), ","));
    PrintRow("K", std::to_string(instance->topology.total_users()));
    PrintRow("security sets", std::to_string(instance->security.size()));
    PrintRow("collusion sets", std::to_string(instance->collusion.size()));
  }
  return kExitOk;
}

int CmdAnalyze(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  SecurityAnalysis a = Analyze(*instance);
  if (c.json_out) {
    PrintJson(AnalysisToJson(a));
    return kExitOk;
  }
  std::printf("analysis\n");
  PrintRow("S_I", Users(a.implicit_set));
  PrintRow("S_bar", Users(a.total_set));
  PrintRow("a*", std::to_string(a.a_star));
  PrintRow("e*", std::to_string(a.e_star));
  PrintRow("Q1", Users(a.q1));
  PrintRow("Q2", Users(a.q2));
  PrintRow("Q", Users(a.q_set));
  PrintRow("a* witnesses", std::to_string(a.a_witnesses.size()));
  PrintRow("e* witnesses", std::to_string(a.e_witnesses.size()));
  return kExitOk;
}

int CmdRate(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  absl::StatusOr<RateContext> ctx = ComputeRates(*instance, Analyze(*instance));
  if (!ctx.ok()) return Fail(kExitStage, ctx.status());
  if (c.json_out) {
    PrintJson(RateToJson(ctx->rate));
    return kExitOk;
  }
  const RateReport& r = ctx->rate;
  std::printf("rates\n");
  PrintRow("regime", std::string(RegimeName(r.regime)));
  PrintRow("R_X", RationalToString(r.r_x_min));
  PrintRow("R_Y", RationalToString(r.r_y_min));
  PrintRow("R_Z", r.exact ? RationalToString(r.key_rate_lower)
                          : absl::StrCat("[", RationalToString(r.key_rate_lower),
                                         ", ", RationalToString(r.key_rate_upper),
                                         "]"));
  PrintRow("exact", r.exact ? "yes" : "no");
  return kExitOk;
}

int CmdLp(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  SecurityAnalysis a = Analyze(*instance);
  absl::StatusOr<Regime> regime = ClassifyRegime(a, instance->topology.total_users());
  if (!regime.ok()) return Fail(kExitStage, regime.status());
  if (*regime != Regime::kRemaining) {
    if (c.json_out) {
      PrintJson({{"regime", std::string(RegimeName(*regime))}, {"applicable", false}});
    } else {
      std::printf("no key allocation program for regime %s\n",
                  std::string(RegimeName(*regime)).c_str());
    }
    return kExitOk;
  }
  absl::StatusOr<LpProblem> problem = BuildLp(*instance, a);
  if (!problem.ok()) return Fail(kExitStage, problem.status());
  absl::StatusOr<LpSolution> sol = SolveLp(*problem);
  if (!sol.ok()) return Fail(kExitStage, sol.status());
  if (c.json_out) {
    json j = LpToJson(*problem, &*sol);
    j["regime"] = std::string(RegimeName(*regime));
    j["applicable"] = true;
    PrintJson(j);
    return kExitOk;
  }
  std::printf("minimize sum of b over {%s}\n",
              absl::StrJoin(problem->variables, ",",
                            [](std::string* out, const UserId& u) {
                              absl::StrAppend(out, "b", u.server, u.slot);
                            })
                  .c_str());
  for (const std::vector<int>& row : problem->constraints) {
    std::vector<std::string> terms;
    for (int i : row) {
      const UserId& u = problem->variables[i];
      terms.push_back(absl::StrCat("b", u.server, u.slot));
    }
    std::printf("  %s >= 1\n", absl::StrJoin(terms, " + ").c_str());
  }
  std::printf("solution\n");
  for (std::size_t i = 0; i < problem->variables.size(); ++i) {
    PrintRow(absl::StrCat("b", problem->variables[i].server,
                          problem->variables[i].slot),
             RationalToString(sol->values[i]));
  }
  PrintRow("b*", RationalToString(sol->objective));
  PrintRow("q_bar", sol->common_denominator.get_str());
  PrintRow("p_bar", sol->p_bar.get_str());
  return kExitOk;
}

int CmdScheme(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  int code = kExitStage;
  absl::StatusOr<SecurityAnalysis> a = LoadOrAnalyze(c, *instance, &code);
  if (!a.ok()) return Fail(code, a.status());
  absl::StatusOr<RateContext> ctx = ComputeRates(*instance, *a);
  if (!ctx.ok()) return Fail(kExitStage, ctx.status());
  absl::StatusOr<KeyScheme> scheme = ObtainScheme(c, *instance, *ctx, &code);
  if (!scheme.ok()) return Fail(code, scheme.status());
  if (c.json_out) {
    PrintJson(SchemeToJson(*scheme, instance->topology));
    return kExitOk;
  }
  std::printf("scheme (%s)\n", std::string(RegimeName(scheme->regime)).c_str());
  PrintRow("q", std::to_string(scheme->field.modulus()));
  PrintRow("L", std::to_string(scheme->block_len));
  PrintRow("source_dim", std::to_string(scheme->source_dim));
  PrintRow("rate", RationalToString(scheme->claimed_rate));
  for (int i = 0; i < instance->topology.total_users(); ++i) {
    PrintRow(absl::StrCat("Z", UserToString(instance->topology.UserAt(i))),
             scheme->coeffs[i].DebugString());
  }
  return kExitOk;
}

int CmdSimulate(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  absl::StatusOr<RateContext> ctx = ComputeRates(*instance, Analyze(*instance));
  if (!ctx.ok()) return Fail(kExitStage, ctx.status());
  int code = kExitStage;
  absl::StatusOr<KeyScheme> scheme = ObtainScheme(c, *instance, *ctx, &code);
  if (!scheme.ok()) return Fail(code, scheme.status());
  SimulationSummary sim = SimulateTrials(instance->topology, *scheme, c.trials,
                                         c.seed.value_or(instance->seed));
  if (c.json_out) {
    json j = {{"trials", sim.trials},
              {"passed", sim.passed},
              {"failed", sim.trials - sim.passed}};
    if (sim.first_failure) {
      j["first_failure"] = TranscriptToJson(*sim.first_failure, instance->topology);
      j["failing_servers"] = sim.first_failure_servers;
    }
    PrintJson(j);
  } else {
    std::printf("simulation\n");
    PrintRow("trials", std::to_string(sim.trials));
    PrintRow("passed", std::to_string(sim.passed));
    PrintRow("failed", std::to_string(sim.trials - sim.passed));
    if (sim.first_failure) {
      PrintRow("first failing servers", absl::StrJoin(sim.first_failure_servers, ","));
    }
  }
  return sim.passed == sim.trials ? kExitOk : kExitViolations;
}

int CmdVerify(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  absl::StatusOr<RateContext> ctx = ComputeRates(*instance, Analyze(*instance));
  if (!ctx.ok()) return Fail(kExitStage, ctx.status());
  int code = kExitStage;
  absl::StatusOr<KeyScheme> scheme = ObtainScheme(c, *instance, *ctx, &code);
  if (!scheme.ok()) return Fail(code, scheme.status());
  absl::StatusOr<SecurityReport> report = VerifyAll(*instance, *scheme);
  if (!report.ok()) return Fail(kExitStage, report.status());
  if (c.json_out) {
    PrintJson(SecurityReportToJson(*report));
  } else {
    std::printf("security\n");
    PrintRow("triples checked", std::to_string(report->triples_checked));
    PrintRow("violations", std::to_string(report->violations.size()));
    for (const SecurityViolation& v : report->violations) {
      std::printf("    k=%d m=%d n=%d I=%d\n", v.k, v.m + 1, v.n + 1, v.mi);
    }
  }
  return report->violations.empty() ? kExitOk : kExitViolations;
}

int CmdPipeline(const Common& c) {
  absl::StatusOr<Instance> instance = LoadInstance(c);
  if (!instance.ok()) return Fail(kExitInput, instance.status());
  PipelineOptions options;
  options.trials = c.trials;
  options.seed = c.seed;
  options.field_modulus = c.q;
  if (!c.inject_path.empty()) {
    absl::StatusOr<std::string> text = ReadFile(c.inject_path);
    if (!text.ok()) return Fail(kExitInput, text.status());
    absl::StatusOr<json> j = ParseJsonText(*text);
    if (!j.ok()) return Fail(kExitInput, j.status());
    SecurityAnalysis a = Analyze(*instance);
    absl::StatusOr<Regime> regime = ClassifyRegime(a, instance->topology.total_users());
    if (!regime.ok()) return Fail(kExitStage, regime.status());
    absl::StatusOr<KeyScheme> s = SchemeFromJson(*j, instance->topology, *regime);
    if (!s.ok()) return Fail(kExitInput, s.status());
    options.injected = *std::move(s);
  }
  absl::StatusOr<RunReport> report = RunPipeline(*instance, options);
  if (!report.ok()) return Fail(kExitStage, report.status());
  if (c.json_out) {
    PrintJson(RunReportToJson(*report, instance->topology));
  } else {
    const RunReport& r = *report;
    std::printf("pipeline %s\n", r.instance_digest.c_str());
    PrintRow("regime", std::string(RegimeName(r.rate.regime)));
    PrintRow("a* / e*", absl::StrCat(r.analysis.a_star, " / ", r.analysis.e_star));
    PrintRow("S_bar", Users(r.analysis.total_set));
    if (r.lp_solution) PrintRow("b*", RationalToString(r.lp_solution->objective));
    PrintRow("R_Z bounds", absl::StrCat("[", RationalToString(r.rate.key_rate_lower),
                                        ", ", RationalToString(r.rate.key_rate_upper),
                                        "]"));
    PrintRow("scheme", absl::StrCat("q=", r.scheme->field.modulus(),
                                    " L=", r.scheme->block_len,
                                    " source_dim=", r.scheme->source_dim,
                                    " rate=", RationalToString(r.scheme->claimed_rate)));
    PrintRow("correctness", absl::StrCat(r.simulation.passed, "/", r.simulation.trials));
    PrintRow("security", absl::StrCat(r.security.triples_checked, " triples, ",
                                      r.security.violations.size(), " violations"));
    for (const auto& [stage, ms] : r.timings_ms) {
      PrintRow(absl::StrCat("time ", stage), absl::StrCat(ms, " ms"));
    }
  }
  return report->ok() ? kExitOk : kExitViolations;
}

int CmdGen(int servers, int max_users, std::uint64_t seed) {
  if (servers < 3 || max_users < 1) {
    std::cerr << "msagg: gen needs --servers >= 3 and --max-users >= 1\n";
    return kExitInput;
  }
  GeneratorOptions options;
  options.min_servers = options.max_servers = servers;
  options.max_users_per_server = max_users;
  Rng rng(seed);
  RawInstance raw = GenerateInstance(rng, options);
  std::cout << json::parse(SerializeRawInstance(raw)).dump(2) << "\n";
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Multi-server secure aggregation toolkit"};
  app.require_subcommand(1);
  Common c;
  std::uint64_t seed_value = 0, q_value = 0;

  auto add_common = [&](CLI::App* sub, bool keys, bool trials) {
    sub->add_option("instance", c.instance_path, "instance JSON file")->required();
    sub->add_flag("--json", c.json_out, "machine-readable output");
    if (keys) {
      sub->add_option("--seed", seed_value, "override the instance seed");
      sub->add_option("--q", q_value, "field modulus (prime)");
      sub->add_option("--inject", c.inject_path, "fixed key scheme JSON");
    }
    if (trials) sub->add_option("--trials", c.trials, "protocol runs")->check(CLI::NonNegativeNumber);
  };

  CLI::App* validate = app.add_subcommand("validate", "check an instance file");
  add_common(validate, false, false);
  CLI::App* analyze = app.add_subcommand("analyze", "security parameters");
  add_common(analyze, false, false);
  CLI::App* rate = app.add_subcommand("rate", "regime and rate bounds");
  add_common(rate, false, false);
  CLI::App* lp = app.add_subcommand("lp", "key allocation program");
  add_common(lp, false, false);
  CLI::App* scheme = app.add_subcommand("scheme", "build or check a key scheme");
  add_common(scheme, true, false);
  scheme->add_option("--analysis", c.analysis_path, "reuse an 'analyze --json' result");
  CLI::App* simulate = app.add_subcommand("simulate", "run the protocol");
  add_common(simulate, true, true);
  CLI::App* verify = app.add_subcommand("verify", "exact security check");
  add_common(verify, true, false);
  CLI::App* pipeline = app.add_subcommand("pipeline", "everything, end to end");
  add_common(pipeline, true, true);

  CLI::App* gen = app.add_subcommand("gen", "random instance");
  int gen_servers = 3, gen_max_users = 3;
  std::uint64_t gen_seed = 0;
  gen->add_option("--servers", gen_servers, "number of servers")->required();
  gen->add_option("--max-users", gen_max_users, "users per server, at most")->required();
  gen->add_option("--seed", gen_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  for (CLI::App* sub : {scheme, simulate, verify, pipeline}) {
    if (sub->parsed()) {
      if (sub->count("--seed") > 0) c.seed = seed_value;
      if (sub->count("--q") > 0) c.q = q_value;
    }
  }

  if (validate->parsed()) return CmdValidate(c);
  if (analyze->parsed()) return CmdAnalyze(c);
  if (rate->parsed()) return CmdRate(c);
  if (lp->parsed()) return CmdLp(c);
  if (scheme->parsed()) return CmdScheme(c);
  if (simulate->parsed()) return CmdSimulate(c);
  if (verify->parsed()) return CmdVerify(c);
  if (pipeline->parsed()) return CmdPipeline(c);
  if (gen->parsed()) return CmdGen(gen_servers, gen_max_users, gen_seed);
  return kExitInput;
}

}  // namespace
}  // namespace msagg

int main(int argc, char** argv) { return msagg::Main(argc, argv); }
