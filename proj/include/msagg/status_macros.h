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

#ifndef MSAGG_STATUS_MACROS_H_
#define MSAGG_STATUS_MACROS_H_

#include "absl/strings/string_view.h"
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

#define MSAGG_STATUS_CONCAT_INNER_(x, y) x##y
#define MSAGG_STATUS_CONCAT_(x, y) MSAGG_STATUS_CONCAT_INNER_(x, y)

#define MSAGG_RETURN_IF_ERROR(expr)            \
  do {                                         \
    absl::Status _msagg_status = (expr);       \
    if (!_msagg_status.ok()) return _msagg_status; \
  } while (0)

#define MSAGG_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                 \
  if (!statusor.ok()) return statusor.status();            \
  lhs = std::move(statusor).value()

#define MSAGG_ASSIGN_OR_RETURN(lhs, rexpr) \
  MSAGG_ASSIGN_OR_RETURN_IMPL_(            \
      MSAGG_STATUS_CONCAT_(_msagg_statusor_, __LINE__), lhs, rexpr)

namespace msagg {

// Error kinds are carried as a "Kind: detail" prefix on the status message so
// that the CLI and tests can match on them without a custom payload.
inline absl::Status KindError(absl::StatusCode code, absl::string_view kind,
                              absl::string_view detail) {
  return absl::Status(code, absl::StrCat(kind, ": ", detail));
}

inline bool HasKind(const absl::Status& status, absl::string_view kind) {
  absl::string_view message = status.message();
  return message.size() > kind.size() && message.substr(0, kind.size()) == kind &&
         message[kind.size()] == ':';
}

}  // namespace msagg

#endif  // MSAGG_STATUS_MACROS_H_
