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

#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace linkflows {

// Absolute IRI (scheme "://" authority path). A default-constructed Iri is
// the "unassigned" sentinel used before a record has been minted.
class Iri {
 public:
  Iri() = default;

  // Throws Error(kInvalidArgument) when `text` is not an absolute IRI.
  static Iri parse(std::string_view text);
  static std::optional<Iri> try_parse(std::string_view text);
  static bool is_valid(std::string_view text);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  // Text after the last '/' or '#'.
  std::string_view last_segment() const noexcept;

  auto operator<=>(const Iri&) const = default;
  bool operator==(const Iri&) const = default;

 private:
  explicit Iri(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

}  // namespace linkflows

template <>
struct std::hash<linkflows::Iri> {
  std::size_t operator()(const linkflows::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.str());
  }
};
