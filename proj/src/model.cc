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

#include "msagg/model.h"

#include <algorithm>
#include <bit>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "msagg/gf.h"
#include "msagg/status_macros.h"

namespace msagg {

using nlohmann::json;

std::string UserToString(const UserId& user) {
  return absl::StrCat("(", user.server, ",", user.slot, ")");
}

std::string UserSetToString(const UserSet& set) {
  return absl::StrCat(
      "{",
      absl::StrJoin(set, ",",
                    [](std::string* out, const UserId& u) {
                      absl::StrAppend(out, UserToString(u));
                    }),
      "}");
}

void Canonicalize(UserSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

Topology::Topology(std::vector<int> users_per_server)
    : users_per_server_(std::move(users_per_server)) {
  int offset = 0;
  for (int v : users_per_server_) {
    offsets_.push_back(offset);
    UserMask mask = 0;
    for (int j = 0; j < v; ++j) mask |= UserMask{1} << (offset + j);
    server_masks_.push_back(mask);
    offset += v;
  }
  total_users_ = offset;
}

absl::StatusOr<Topology> Topology::Create(std::vector<int> users_per_server) {
  if (users_per_server.size() < 3) {
    return KindError(absl::StatusCode::kInvalidArgument, "BadTopology",
                     absl::StrCat("need at least 3 servers, got ",
                                  users_per_server.size()));
  }
  long total = 0;
  for (std::size_t u = 0; u < users_per_server.size(); ++u) {
    if (users_per_server[u] < 1) {
      return KindError(absl::StatusCode::kInvalidArgument, "BadTopology",
                       absl::StrCat("server ", u + 1, " has ",
                                    users_per_server[u], " users"));
    }
    total += users_per_server[u];
    if (total > kMaxUsers) {
      return KindError(absl::StatusCode::kInvalidArgument, "BadTopology",
                       absl::StrCat("more than ", kMaxUsers, " users"));
    }
  }
  return Topology(std::move(users_per_server));
}

bool Topology::Contains(const UserId& user) const {
  return user.server >= 1 && user.server <= server_count() && user.slot >= 1 &&
         user.slot <= users_at(user.server);
}

int Topology::IndexOf(const UserId& user) const {
  return offsets_[user.server - 1] + user.slot - 1;
}

UserId Topology::UserAt(int index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  int server = static_cast<int>(it - offsets_.begin());
  return UserId{server, index - offsets_[server - 1] + 1};
}

UserSet Topology::UsersOf(int server) const {
  UserSet out;
  for (int j = 1; j <= users_at(server); ++j) out.push_back({server, j});
  return out;
}

UserSet Topology::AllUsers() const { return SetOf(FullMask()); }

UserMask Topology::FullMask() const {
  return total_users_ == 64 ? ~UserMask{0}
                            : (UserMask{1} << total_users_) - 1;
}

UserMask Topology::MaskOf(const UserSet& set) const {
  UserMask mask = 0;
  for (const UserId& u : set) mask |= UserMask{1} << IndexOf(u);
  return mask;
}

UserSet Topology::SetOf(UserMask mask) const {
  UserSet out;
  while (mask != 0) {
    int i = std::countr_zero(mask);
    out.push_back(UserAt(i));
    mask &= mask - 1;
  }
  return out;
}

int SetSystem::Find(const UserSet& set) const {
  auto it = std::find(closure.begin(), closure.end(), set);
  return it == closure.end() ? -1 : static_cast<int>(it - closure.begin());
}

UserSet SetSystem::Union() const {
  UserSet out;
  for (const UserSet& s : closure) out.insert(out.end(), s.begin(), s.end());
  Canonicalize(out);
  return out;
}

bool ClosureOrderLess(const UserSet& a, const UserSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

absl::StatusOr<std::vector<UserSet>> ClosureOf(
    const std::vector<UserSet>& generators, std::size_t cap) {
  std::set<UserSet> seen;
  seen.insert(UserSet{});
  for (UserSet g : generators) {
    Canonicalize(g);
    if (g.size() >= 63) {
      return KindError(absl::StatusCode::kResourceExhausted,
                       "ClosureTooLarge", "generator too large to expand");
    }
    std::uint64_t count = std::uint64_t{1} << g.size();
    if (count > cap) {
      return KindError(absl::StatusCode::kResourceExhausted,
                       "ClosureTooLarge",
                       absl::StrCat("generator of size ", g.size(),
                                    " exceeds cap ", cap));
    }
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      UserSet sub;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (bits >> i & 1) sub.push_back(g[i]);
      }
      seen.insert(std::move(sub));
      if (seen.size() > cap) {
        return KindError(absl::StatusCode::kResourceExhausted,
                         "ClosureTooLarge",
                         absl::StrCat("closure exceeds cap ", cap));
      }
    }
  }
  std::vector<UserSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), ClosureOrderLess);
  return out;
}

namespace {

absl::Status CheckUsers(const Topology& topology,
                        const std::vector<UserSet>& sets,
                        absl::string_view what) {
  for (const UserSet& s : sets) {
    for (const UserId& u : s) {
      if (!topology.Contains(u)) {
        return KindError(absl::StatusCode::kInvalidArgument, "UnknownUser",
                         absl::StrCat(what, " mentions ", UserToString(u)));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SetSystem> MakeSystem(const Topology& topology,
                                     std::vector<UserSet> generators,
                                     std::size_t cap) {
  SetSystem system;
  for (UserSet& g : generators) Canonicalize(g);
  system.generators = std::move(generators);
  MSAGG_ASSIGN_OR_RETURN(system.closure, ClosureOf(system.generators, cap));
  for (const UserSet& s : system.closure) {
    system.closure_masks.push_back(topology.MaskOf(s));
  }
  return system;
}

}  // namespace

absl::StatusOr<Instance> ValidateInstance(const RawInstance& raw,
                                          const ValidationOptions& options) {
  MSAGG_ASSIGN_OR_RETURN(Topology topology, Topology::Create(raw.servers));
  MSAGG_RETURN_IF_ERROR(
      CheckUsers(topology, raw.security_generators, "security_generators"));
  MSAGG_RETURN_IF_ERROR(
      CheckUsers(topology, raw.collusion_generators, "collusion_generators"));

  bool any_secret = false;
  for (const UserSet& s : raw.security_generators) any_secret |= !s.empty();
  if (!any_secret) {
    return KindError(absl::StatusCode::kInvalidArgument,
                     "TrivialSecuritySystem", "union of security sets is empty");
  }
  const int k = topology.total_users();
  for (UserSet t : raw.collusion_generators) {
    Canonicalize(t);
    if (static_cast<int>(t.size()) > k - 2) {
      return KindError(absl::StatusCode::kInvalidArgument, "OversizedColluder",
                       absl::StrCat(UserSetToString(t), " has more than K-2=",
                                    k - 2, " users"));
    }
  }
  if (raw.field_modulus.has_value()) {
    std::uint64_t q = *raw.field_modulus;
    if (q < 2 || q > kMaxModulus || !IsPrime(q)) {
      return KindError(absl::StatusCode::kInvalidArgument, "BadModulus",
                       absl::StrCat(q, " is not a prime in [2, 2^61-1]"));
    }
  }

  Instance instance{topology, {}, {}, raw.field_modulus, raw.seed};
  MSAGG_ASSIGN_OR_RETURN(
      instance.security,
      MakeSystem(topology, raw.security_generators, options.closure_cap));
  MSAGG_ASSIGN_OR_RETURN(
      instance.collusion,
      MakeSystem(topology, raw.collusion_generators, options.closure_cap));
  return instance;
}

namespace {

absl::Status ParseError(absl::string_view detail) {
  return KindError(absl::StatusCode::kInvalidArgument, "ParseError", detail);
}

absl::StatusOr<std::vector<UserSet>> ParseFamily(const json& j,
                                                 absl::string_view key) {
  if (!j.is_array()) {
    return ParseError(absl::StrCat("'", key, "' must be an array of sets"));
  }
  std::vector<UserSet> out;
  for (const json& set : j) {
    if (!set.is_array()) {
      return ParseError(absl::StrCat("'", key, "' entries must be arrays"));
    }
    UserSet s;
    for (const json& user : set) {
      if (!user.is_array() || user.size() != 2 ||
          !user[0].is_number_integer() || !user[1].is_number_integer()) {
        return ParseError(
            absl::StrCat("'", key, "' users must be [server, slot] pairs"));
      }
      s.push_back({user[0].get<int>(), user[1].get<int>()});
    }
    out.push_back(std::move(s));
  }
  return out;
}

json FamilyToJson(const std::vector<UserSet>& family) {
  json out = json::array();
  for (const UserSet& s : family) {
    json set = json::array();
    for (const UserId& u : s) set.push_back({u.server, u.slot});
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

absl::StatusOr<RawInstance> ParseRawInstance(absl::string_view json_text) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return ParseError("not valid JSON");
  if (!j.is_object()) return ParseError("top level must be an object");

  RawInstance raw;
  if (!j.contains("servers") || !j["servers"].is_array()) {
    return ParseError("'servers' must be an array of user counts");
  }
  for (const json& v : j["servers"]) {
    if (!v.is_number_integer()) return ParseError("'servers' entries must be integers");
    raw.servers.push_back(v.get<int>());
  }
  for (const char* key : {"security_generators", "collusion_generators"}) {
    if (!j.contains(key)) return ParseError(absl::StrCat("missing '", key, "'"));
  }
  MSAGG_ASSIGN_OR_RETURN(raw.security_generators,
                         ParseFamily(j["security_generators"], "security_generators"));
  MSAGG_ASSIGN_OR_RETURN(raw.collusion_generators,
                         ParseFamily(j["collusion_generators"], "collusion_generators"));
  if (j.contains("field_modulus") && !j["field_modulus"].is_null()) {
    if (!j["field_modulus"].is_number_unsigned()) {
      return ParseError("'field_modulus' must be a positive integer or null");
    }
    raw.field_modulus = j["field_modulus"].get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      return ParseError("'seed' must be a non-negative integer");
    }
    raw.seed = j["seed"].get<std::uint64_t>();
  }
  return raw;
}

absl::StatusOr<Instance> ParseInstance(absl::string_view json_text,
                                       const ValidationOptions& options) {
  MSAGG_ASSIGN_OR_RETURN(RawInstance raw, ParseRawInstance(json_text));
  return ValidateInstance(raw, options);
}

RawInstance ToRaw(const Instance& instance) {
  return RawInstance{instance.topology.users_per_server(),
                     instance.security.generators,
                     instance.collusion.generators, instance.field_modulus,
                     instance.seed};
}

std::string SerializeRawInstance(const RawInstance& raw) {
  json j;
  j["servers"] = raw.servers;
  j["security_generators"] = FamilyToJson(raw.security_generators);
  j["collusion_generators"] = FamilyToJson(raw.collusion_generators);
  j["field_modulus"] = raw.field_modulus.has_value()
                           ? json(*raw.field_modulus)
                           : json(nullptr);
  j["seed"] = raw.seed;
  return j.dump();
}

std::string SerializeInstance(const Instance& instance) {
  return SerializeRawInstance(ToRaw(instance));
}

}  // namespace msagg
