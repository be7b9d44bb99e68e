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

// Store-mutating operations shared by the CLI and the HTTP API. Request
// bodies are JSON objects; field problems are reported as violations.

#include <json.hpp>

#include "linkflows/store.hpp"

namespace linkflows::service {

struct WriteOutcome {
  nlohmann::json body;
  bool created = false;  // at least one node was new
};

// {"text": ...} -> {"article":[iri], "section":[...], "paragraph":[...],
// "added": n}. Throws kEmptyInput.
WriteOutcome ingest_article(GraphStore& store, std::string_view text, Timestamp now);

// {refersTo, text, aspect, polarity, actionNeeded, impact, author
// [, previousVersion]} -> {"id": iri}. `author` is an agent IRI or a display
// name; a name creates (or reuses) an agent node with `default_role`.
// Throws kValidationFailed with violations, kReferenceUnresolved on a
// dangling target.
WriteOutcome add_comment(GraphStore& store, const nlohmann::json& body, Timestamp now);
// {isResponseTo, text, agreement, author}
WriteOutcome add_response(GraphStore& store, const nlohmann::json& body, Timestamp now);
// {isResponseTo, text, status, author}
WriteOutcome add_check(GraphStore& store, const nlohmann::json& body, Timestamp now);

// Every review comment on `node` as a reply tree. Throws kNotFound.
nlohmann::json threads_on(const Snapshot& view, const Iri& node);

// Looks `path` up as base + path, then as an id suffix. nullptr if absent.
const NodeEnvelope* resolve_node(const Snapshot& view, std::string_view base,
                                 std::string_view path);

}  // namespace linkflows::service
