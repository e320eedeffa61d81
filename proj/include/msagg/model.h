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

#ifndef MSAGG_MODEL_H_
#define MSAGG_MODEL_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"

namespace msagg {

// User (server, slot), both 1-based. Ordering is lexicographic.
struct UserId {
  int server = 0;
  int slot = 0;

  auto operator<=>(const UserId&) const = default;
};

// Sorted, duplicate-free list of users.
using UserSet = std::vector<UserId>;

// Bit i set <=> user with flat index i is a member.
using UserMask = std::uint64_t;

inline constexpr int kMaxUsers = 64;
inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 20;

std::string UserToString(const UserId& user);
std::string UserSetToString(const UserSet& set);

// Sorts and deduplicates in place.
void Canonicalize(UserSet& set);

class Topology {
 public:
  // BadTopology when fewer than 3 servers, an empty server, or more than
  // kMaxUsers users in total.
  static absl::StatusOr<Topology> Create(std::vector<int> users_per_server);

  int server_count() const { return static_cast<int>(users_per_server_.size()); }
  // `server` is 1-based.
  int users_at(int server) const { return users_per_server_[server - 1]; }
  int total_users() const { return total_users_; }
  const std::vector<int>& users_per_server() const { return users_per_server_; }

  bool Contains(const UserId& user) const;
  // Flat 0-based index in lexicographic order.
  int IndexOf(const UserId& user) const;
  UserId UserAt(int index) const;

  UserSet UsersOf(int server) const;
  UserSet AllUsers() const;

  UserMask ServerMask(int server) const { return server_masks_[server - 1]; }
  UserMask FullMask() const;
  UserMask MaskOf(const UserSet& set) const;
  UserSet SetOf(UserMask mask) const;

  bool operator==(const Topology& other) const {
    return users_per_server_ == other.users_per_server_;
  }

 private:
  explicit Topology(std::vector<int> users_per_server);

  std::vector<int> users_per_server_;
  std::vector<int> offsets_;
  std::vector<UserMask> server_masks_;
  int total_users_ = 0;
};

// A monotone set system kept both as the supplied generators and as its full
// closure. closure[0] is always the empty set; the rest are ordered by
// (size, lexicographic).
struct SetSystem {
  std::vector<UserSet> generators;
  std::vector<UserSet> closure;
  std::vector<UserMask> closure_masks;

  std::size_t size() const { return closure.size(); }
  // Index into closure, or -1.
  int Find(const UserSet& set) const;
  UserSet Union() const;

  bool operator==(const SetSystem& other) const {
    return closure == other.closure;
  }
};

// All subsets of all generators, deduplicated, ordered as in SetSystem.
// ClosureTooLarge when the result would hold more than `cap` sets.
absl::StatusOr<std::vector<UserSet>> ClosureOf(
    const std::vector<UserSet>& generators,
    std::size_t cap = kDefaultClosureCap);

// Orders sets by (size, lexicographic); the empty set comes first.
bool ClosureOrderLess(const UserSet& a, const UserSet& b);

struct Instance {
  Topology topology;
  SetSystem security;   // S_1..S_M
  SetSystem collusion;  // T_1..T_N
  std::optional<std::uint64_t> field_modulus;
  std::uint64_t seed = 0;

  bool operator==(const Instance& other) const = default;
};

// Unvalidated instance description as read from the wire format.
struct RawInstance {
  std::vector<int> servers;
  std::vector<UserSet> security_generators;
  std::vector<UserSet> collusion_generators;
  std::optional<std::uint64_t> field_modulus;
  std::uint64_t seed = 0;
};

struct ValidationOptions {
  std::size_t closure_cap = kDefaultClosureCap;
};

// Errors (message prefixes): BadTopology, UnknownUser, TrivialSecuritySystem,
// OversizedColluder, BadModulus, ClosureTooLarge.
absl::StatusOr<Instance> ValidateInstance(const RawInstance& raw,
                                          const ValidationOptions& options = {});

// Parses the JSON instance format:
//   {"servers":[V_1,...], "security_generators":[[[u,v],...],...],
//    "collusion_generators":[...], "field_modulus":q|null, "seed":n}
// Malformed input yields a ParseError status.
absl::StatusOr<RawInstance> ParseRawInstance(absl::string_view json_text);
absl::StatusOr<Instance> ParseInstance(absl::string_view json_text,
                                       const ValidationOptions& options = {});

RawInstance ToRaw(const Instance& instance);
std::string SerializeInstance(const Instance& instance);
std::string SerializeRawInstance(const RawInstance& raw);

}  // namespace msagg

#endif  // MSAGG_MODEL_H_
