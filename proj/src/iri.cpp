// Copyright 2026 The Linkflows Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linkflows/iri.hpp"

#include <cctype>

#include "linkflows/errors.hpp"

namespace linkflows {

namespace {

bool forbidden(unsigned char c) {
  if (c <= 0x20 || c == 0x7f) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}': case '|':
    case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

}  // namespace

bool Iri::is_valid(std::string_view text) {
  if (text.empty()) return false;
  for (unsigned char c : text) {
    if (forbidden(c)) return false;
  }
  const auto colon = text.find("://");
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  const auto authority_begin = colon + 3;
  const auto authority_end = text.find_first_of("/?#", authority_begin);
  const auto authority_len = (authority_end == std::string_view::npos)
                                 ? text.size() - authority_begin
                                 : authority_end - authority_begin;
  return authority_len > 0;
}

std::optional<Iri> Iri::try_parse(std::string_view text) {
  if (!is_valid(text)) return std::nullopt;
  return Iri(std::string(text));
}

Iri Iri::parse(std::string_view text) {
  auto iri = try_parse(text);
  if (!iri) {
    throw Error(ErrorCode::kInvalidArgument,
                "not an absolute IRI: '" + std::string(text) + "'");
  }
  return *std::move(iri);
}

std::string_view Iri::last_segment() const noexcept {
  std::string_view v = value_;
  const auto pos = v.find_last_of("/#");
  return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

}  // namespace linkflows
