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

#include "msagg/json_io.h"

#include <string>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "msagg/status_macros.h"

namespace msagg {

using nlohmann::json;

namespace {

absl::Status ParseError(absl::string_view detail) {
  return KindError(absl::StatusCode::kInvalidArgument, "ParseError", detail);
}

json TriplesToJson(const std::vector<Triple>& triples) {
  json out = json::array();
  for (const Triple& t : triples) out.push_back({t.server, t.m + 1, t.n + 1});
  return out;
}

absl::StatusOr<UserSet> UserSetFromJson(const json& j, absl::string_view key) {
  if (!j.is_array()) return ParseError(absl::StrCat("'", key, "' must be a list"));
  UserSet out;
  for (const json& u : j) {
    if (!u.is_array() || u.size() != 2 || !u[0].is_number_integer() ||
        !u[1].is_number_integer()) {
      return ParseError(absl::StrCat("'", key, "' holds a malformed user"));
    }
    out.push_back({u[0].get<int>(), u[1].get<int>()});
  }
  Canonicalize(out);
  return out;
}

absl::StatusOr<std::vector<Triple>> TriplesFromJson(const json& j,
                                                    absl::string_view key) {
  if (!j.is_array()) return ParseError(absl::StrCat("'", key, "' must be a list"));
  std::vector<Triple> out;
  for (const json& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
        !t[1].is_number_integer() || !t[2].is_number_integer()) {
      return ParseError(absl::StrCat("'", key, "' holds a malformed triple"));
    }
    out.push_back({t[0].get<int>(), t[1].get<int>() - 1, t[2].get<int>() - 1});
  }
  return out;
}

absl::StatusOr<int> IntField(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    return ParseError(absl::StrCat("'", key, "' must be an integer"));
  }
  return j[key].get<int>();
}

absl::StatusOr<UserId> ParseUserKey(const std::string& key) {
  std::vector<std::string> parts = absl::StrSplit(key, ',');
  int u, v;
  if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &u) ||
      !absl::SimpleAtoi(parts[1], &v)) {
    return ParseError(absl::StrCat("bad user key '", key, "'"));
  }
  return UserId{u, v};
}

json SymbolsToJson(const Symbols& s) { return json(s); }

}  // namespace

json UserSetToJson(const UserSet& set) {
  json out = json::array();
  for (const UserId& u : set) out.push_back({u.server, u.slot});
  return out;
}

std::string UserKey(const UserId& user) {
  return absl::StrCat(user.server, ",", user.slot);
}

json AnalysisToJson(const SecurityAnalysis& a) {
  json j;
  j["S_I"] = UserSetToJson(a.implicit_set);
  j["S_bar"] = UserSetToJson(a.total_set);
  j["a_star"] = a.a_star;
  j["e_star"] = a.e_star;
  j["Q"] = UserSetToJson(a.q_set);
  j["Q1"] = UserSetToJson(a.q1);
  j["Q2"] = UserSetToJson(a.q2);
  j["witnesses"] = {{"a", TriplesToJson(a.a_witnesses)},
                    {"e", TriplesToJson(a.e_witnesses)}};
  return j;
}

absl::StatusOr<SecurityAnalysis> AnalysisFromJson(const json& j) {
  if (!j.is_object()) return ParseError("analysis must be an object");
  SecurityAnalysis a;
  for (const char* key : {"S_I", "S_bar", "Q", "witnesses"}) {
    if (!j.contains(key)) return ParseError(absl::StrCat("missing '", key, "'"));
  }
  MSAGG_ASSIGN_OR_RETURN(a.implicit_set, UserSetFromJson(j["S_I"], "S_I"));
  MSAGG_ASSIGN_OR_RETURN(a.total_set, UserSetFromJson(j["S_bar"], "S_bar"));
  MSAGG_ASSIGN_OR_RETURN(a.q_set, UserSetFromJson(j["Q"], "Q"));
  if (j.contains("Q1")) {
    MSAGG_ASSIGN_OR_RETURN(a.q1, UserSetFromJson(j["Q1"], "Q1"));
  }
  if (j.contains("Q2")) {
    MSAGG_ASSIGN_OR_RETURN(a.q2, UserSetFromJson(j["Q2"], "Q2"));
  }
  MSAGG_ASSIGN_OR_RETURN(a.a_star, IntField(j, "a_star"));
  MSAGG_ASSIGN_OR_RETURN(a.e_star, IntField(j, "e_star"));
  const json& w = j["witnesses"];
  if (!w.is_object() || !w.contains("a") || !w.contains("e")) {
    return ParseError("'witnesses' must hold 'a' and 'e' lists");
  }
  MSAGG_ASSIGN_OR_RETURN(a.a_witnesses, TriplesFromJson(w["a"], "witnesses.a"));
  MSAGG_ASSIGN_OR_RETURN(a.e_witnesses, TriplesFromJson(w["e"], "witnesses.e"));
  return a;
}

json RateToJson(const RateReport& r) {
  return json{{"regime", std::string(RegimeName(r.regime))},
              {"R_X", RationalToString(r.r_x_min)},
              {"R_Y", RationalToString(r.r_y_min)},
              {"R_Z_lower", RationalToString(r.key_rate_lower)},
              {"R_Z_upper", RationalToString(r.key_rate_upper)},
              {"exact", r.exact}};
}

json LpToJson(const LpProblem& problem, const LpSolution* solution) {
  json j;
  json vars = json::array();
  for (const UserId& u : problem.variables) vars.push_back(UserKey(u));
  j["variables"] = vars;
  json matrix = json::array();
  json sets = json::array();
  for (const std::vector<int>& row : problem.constraints) {
    std::vector<int> dense(problem.variables.size(), 0);
    json set = json::array();
    for (int i : row) {
      dense[i] = 1;
      set.push_back(UserKey(problem.variables[i]));
    }
    matrix.push_back(dense);
    sets.push_back(set);
  }
  j["constraint_matrix"] = matrix;
  j["constraints"] = sets;
  j["rhs"] = "1";
  if (solution != nullptr) {
    json values = json::object();
    json numerators = json::object();
    for (std::size_t i = 0; i < problem.variables.size(); ++i) {
      values[UserKey(problem.variables[i])] = RationalToString(solution->values[i]);
      numerators[UserKey(problem.variables[i])] = solution->numerators[i].get_str();
    }
    json duals = json::array();
    for (const Rational& y : solution->duals) duals.push_back(RationalToString(y));
    j["solution"] = {{"values", values},
                     {"b_star", RationalToString(solution->objective)},
                     {"q_bar", solution->common_denominator.get_str()},
                     {"numerators", numerators},
                     {"p_bar", solution->p_bar.get_str()},
                     {"duals", duals}};
  }
  return j;
}

json SchemeToJson(const KeyScheme& scheme, const Topology& topology) {
  json coeffs = json::object();
  for (int i = 0; i < topology.total_users(); ++i) {
    coeffs[UserKey(topology.UserAt(i))] = scheme.coeffs[i].ToRows();
  }
  return json{{"q", scheme.field.modulus()},
              {"L", scheme.block_len},
              {"source_dim", scheme.source_dim},
              {"regime", std::string(RegimeName(scheme.regime))},
              {"coeffs", coeffs},
              {"rate", RationalToString(scheme.claimed_rate)}};
}

absl::StatusOr<KeyScheme> SchemeFromJson(const json& j, const Topology& topology,
                                         Regime default_regime) {
  if (!j.is_object()) return ParseError("scheme must be an object");
  if (!j.contains("q") || !j["q"].is_number_integer() ||
      (!j["q"].is_number_unsigned() && j["q"].get<std::int64_t>() < 1)) {
    return ParseError("'q' must be a positive integer");
  }
  MSAGG_ASSIGN_OR_RETURN(PrimeField field,
                         PrimeField::Create(j["q"].get<std::uint64_t>()));
  MSAGG_ASSIGN_OR_RETURN(int block_len, IntField(j, "L"));
  MSAGG_ASSIGN_OR_RETURN(int source_dim, IntField(j, "source_dim"));
  if (block_len < 1 || source_dim < 0) return ParseError("bad L or source_dim");
  Regime regime = default_regime;
  if (j.contains("regime")) {
    if (!j["regime"].is_string()) return ParseError("'regime' must be a string");
    MSAGG_ASSIGN_OR_RETURN(regime, RegimeFromName(j["regime"].get<std::string>()));
  }
  KeyScheme scheme{field, block_len, source_dim, {}, regime,
                   Rational(source_dim, block_len)};
  scheme.claimed_rate.canonicalize();
  if (j.contains("rate")) {
    if (!j["rate"].is_string()) return ParseError("'rate' must be a \"p/q\" string");
    MSAGG_ASSIGN_OR_RETURN(scheme.claimed_rate,
                           ParseRational(j["rate"].get<std::string>()));
  }
  scheme.coeffs.assign(topology.total_users(), FMatrix(block_len, source_dim));
  if (!j.contains("coeffs") || !j["coeffs"].is_object()) {
    return ParseError("'coeffs' must be an object keyed by \"u,v\"");
  }
  for (const auto& [key, rows] : j["coeffs"].items()) {
    MSAGG_ASSIGN_OR_RETURN(UserId user, ParseUserKey(key));
    if (!topology.Contains(user)) {
      return KindError(absl::StatusCode::kInvalidArgument, "UnknownUser",
                       absl::StrCat("coefficient for unknown user ", key));
    }
    if (!rows.is_array() || static_cast<int>(rows.size()) != block_len) {
      return ParseError(absl::StrCat("coeffs[", key, "] must have L rows"));
    }
    FMatrix& m = scheme.coeffs[topology.IndexOf(user)];
    for (int r = 0; r < block_len; ++r) {
      const json& row = rows[r];
      if (!row.is_array() || static_cast<int>(row.size()) != source_dim) {
        return ParseError(
            absl::StrCat("coeffs[", key, "] rows must have source_dim entries"));
      }
      for (int c = 0; c < source_dim; ++c) {
        if (!row[c].is_number_integer()) {
          return ParseError(absl::StrCat("coeffs[", key, "] holds a non-integer"));
        }
        m.at(r, c) = row[c].is_number_unsigned()
                         ? row[c].get<std::uint64_t>() % field.modulus()
                         : field.Reduce(row[c].get<std::int64_t>());
      }
    }
  }
  return scheme;
}

json SecurityReportToJson(const SecurityReport& report) {
  json violations = json::array();
  for (const SecurityViolation& v : report.violations) {
    violations.push_back({{"k", v.k}, {"m", v.m + 1}, {"n", v.n + 1}, {"mi", v.mi}});
  }
  return json{{"triples_checked", report.triples_checked},
              {"violations", violations}};
}

json TranscriptToJson(const Transcript& t, const Topology& topology) {
  json inputs = json::object(), keys = json::object(), xs = json::object();
  for (int i = 0; i < topology.total_users(); ++i) {
    std::string key = UserKey(topology.UserAt(i));
    inputs[key] = SymbolsToJson(t.inputs[i]);
    keys[key] = SymbolsToJson(t.keys[i]);
    xs[key] = SymbolsToJson(t.x_messages[i]);
  }
  json ys = json::object(), decoded = json::object();
  for (int u = 1; u <= topology.server_count(); ++u) {
    ys[std::to_string(u)] = SymbolsToJson(t.y_messages[u - 1]);
    decoded[std::to_string(u)] = SymbolsToJson(t.decoded[u - 1]);
  }
  return json{{"inputs", inputs},   {"source_key", SymbolsToJson(t.source_key)},
              {"keys", keys},       {"x", xs},
              {"y", ys},            {"decoded", decoded}};
}

absl::StatusOr<json> ParseJsonText(absl::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return ParseError("not valid JSON");
  return j;
}

}  // namespace msagg
