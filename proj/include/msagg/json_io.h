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

#ifndef MSAGG_JSON_IO_H_
#define MSAGG_JSON_IO_H_

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

// Wire formats. Closure indices (m, n) are written 1-based, so the empty set
// is index 1; users are [server, slot] pairs or "server,slot" map keys.

nlohmann::json UserSetToJson(const UserSet& set);
std::string UserKey(const UserId& user);  // "u,v"

nlohmann::json AnalysisToJson(const SecurityAnalysis& analysis);
absl::StatusOr<SecurityAnalysis> AnalysisFromJson(const nlohmann::json& j);

nlohmann::json RateToJson(const RateReport& report);

nlohmann::json LpToJson(const LpProblem& problem, const LpSolution* solution);

// {"q", "L", "source_dim", "regime", "coeffs": {"u,v": [[...]]}, "rate"}.
nlohmann::json SchemeToJson(const KeyScheme& scheme, const Topology& topology);

// Reads the scheme format. Negative entries are reduced mod q, users missing
// from "coeffs" get zero keys, "regime" defaults to `default_regime` and
// "rate" to source_dim / L. ParseError on malformed input.
absl::StatusOr<KeyScheme> SchemeFromJson(const nlohmann::json& j,
                                         const Topology& topology,
                                         Regime default_regime);

nlohmann::json SecurityReportToJson(const SecurityReport& report);

nlohmann::json TranscriptToJson(const Transcript& transcript,
                                const Topology& topology);

// Parses text into JSON; ParseError on failure.
absl::StatusOr<nlohmann::json> ParseJsonText(absl::string_view text);

}  // namespace msagg

#endif  // MSAGG_JSON_IO_H_
