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

// Content addressing: canonical payload bytes, digests and minted IRIs.
//
// Canonical payload = one "key=value\n" line per present field, keys sorted
// bytewise, values UTF-8 with '\\', LF and CR escaped as "\\\\", "\\n", "\\r".
// The id and createdAt fields are excluded so identical content dedupes.

#include <string>
#include <string_view>

#include "linkflows/model.hpp"

namespace linkflows {

struct NodeEnvelope {
  Iri id;
  NodeKind kind = NodeKind::snippet;
  NodeRecord payload;
  std::string contentHash;

  bool operator==(const NodeEnvelope&) const = default;
};

std::string canonical_payload(const NodeRecord& record);

// Path segment used in minted IRIs: snippet, comment, response, check, agent.
std::string_view kind_segment(NodeKind kind);

// base + kind segment + "/" + first 16 hex chars of SHA-256(bytes).
Iri mint_iri(NodeKind kind, std::string_view canonical_bytes, std::string_view base);

// Hashes the record, mints its id under `base` and returns the envelope.
NodeEnvelope seal(NodeRecord record, std::string_view base);

// contentHash matches the payload and the id ends in the hash prefix.
bool verify_envelope(const NodeEnvelope& envelope);

}  // namespace linkflows
