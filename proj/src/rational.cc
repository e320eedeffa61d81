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

#include "msagg/rational.h"

#include <string>

#include "absl/strings/str_cat.h"
#include "msagg/status_macros.h"

namespace msagg {

std::string RationalToString(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return absl::StrCat(r.get_num().get_str(), "/", r.get_den().get_str());
}

absl::StatusOr<Rational> ParseRational(absl::string_view text) {
  std::string s(text);
  auto bad = [&] {
    return KindError(absl::StatusCode::kInvalidArgument, "ParseError",
                     absl::StrCat("not a rational: '", s, "'"));
  };
  if (s.empty()) return bad();
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && i == 0);
    if (!ok) return bad();
  }
  Rational r;
  if (r.set_str(s, 10) != 0) return bad();
  if (r.get_den() == 0) return bad();
  r.canonicalize();
  return r;
}

mpz_class CommonDenominator(const std::vector<Rational>& values) {
  mpz_class l = 1;
  for (const Rational& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  }
  return l;
}

}  // namespace msagg
