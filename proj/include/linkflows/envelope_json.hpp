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

#include <json.hpp>

#include "linkflows/canonical.hpp"

namespace linkflows {

// Record fields as a JSON object (includes "id" when assigned).
nlohmann::json record_to_json(const NodeRecord& record);
// Throws Error(kParse) on missing or mistyped fields.
NodeRecord record_from_json(const nlohmann::json& j, NodeKind kind);

// One persisted log line: {"contentHash","id","kind","payload"}.
nlohmann::json envelope_to_json(const NodeEnvelope& envelope);
NodeEnvelope envelope_from_json(const nlohmann::json& j);

nlohmann::json thread_to_json(const ThreadNode& thread);

}  // namespace linkflows
