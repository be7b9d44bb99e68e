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

#include "linkflows/canonical.hpp"

#include <map>

#include "linkflows/sha256.hpp"

namespace linkflows {

namespace {

std::string escape(std::string_view v) {
  std::string out;
  out.reserve(v.size());
  for (char c : v) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

using Fields = std::map<std::string, std::string>;

void put_opt(Fields& f, const char* key, const std::optional<Iri>& iri) {
  if (iri) f[key] = iri->str();
}

Fields fields_of(const NodeRecord& record) {
  Fields f;
  f["kind"] = std::string(to_string(kind_of(record)));
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SnippetNode>) {
          f["level"] = std::string(to_string(r.level));
          f["text"] = r.text;
          f["order"] = std::to_string(r.order);
          put_opt(f, "parent", r.parent);
          put_opt(f, "previousVersion", r.previousVersion);
          if (!r.subtype.empty()) f["subtype"] = r.subtype;
        } else if constexpr (std::is_same_v<T, ReviewComment>) {
          f["refersTo"] = r.refersTo.str();
          f["text"] = r.text;
          f["author"] = r.author.str();
          if (r.aspect) f["aspect"] = std::string(to_string(*r.aspect));
          if (r.polarity) f["polarity"] = std::string(to_string(*r.polarity));
          if (r.actionNeeded) f["actionNeeded"] = std::string(to_string(*r.actionNeeded));
          if (r.impact) f["impact"] = std::to_string(r.impact->value());
          put_opt(f, "previousVersion", r.previousVersion);
        } else if constexpr (std::is_same_v<T, ResponseComment>) {
          f["isResponseTo"] = r.isResponseTo.str();
          f["author"] = r.author.str();
          f["text"] = r.text;
          f["agreement"] = std::string(to_string(r.agreement));
        } else if constexpr (std::is_same_v<T, ActionCheckComment>) {
          f["isResponseTo"] = r.isResponseTo.str();
          f["author"] = r.author.str();
          f["text"] = r.text;
          f["status"] = std::string(to_string(r.status));
        } else {
          f["displayName"] = r.displayName;
          f["role"] = std::string(to_string(r.role));
        }
      },
      record);
  return f;
}

}  // namespace

std::string canonical_payload(const NodeRecord& record) {
  std::string out;
  for (const auto& [key, value] : fields_of(record)) {
    out += key;
    out += '=';
    out += escape(value);
    out += '\n';
  }
  return out;
}

std::string_view kind_segment(NodeKind kind) {
  switch (kind) {
    case NodeKind::snippet: return "snippet";
    case NodeKind::reviewComment: return "comment";
    case NodeKind::responseComment: return "response";
    case NodeKind::actionCheckComment: return "check";
    case NodeKind::agent: return "agent";
  }
  return "node";
}

Iri mint_iri(NodeKind kind, std::string_view canonical_bytes, std::string_view base) {
  const auto digest = sha256_hex(canonical_bytes);
  std::string iri(base);
  iri += kind_segment(kind);
  iri += '/';
  iri += std::string_view(digest).substr(0, 16);
  return Iri::parse(iri);
}

NodeEnvelope seal(NodeRecord record, std::string_view base) {
  const auto bytes = canonical_payload(record);
  const auto digest = sha256_hex(bytes);
  const auto kind = kind_of(record);
  Iri id = Iri::parse(std::string(base) + std::string(kind_segment(kind)) + "/" +
                      digest.substr(0, 16));
  set_id(record, id);
  return NodeEnvelope{std::move(id), kind, std::move(record), digest};
}

bool verify_envelope(const NodeEnvelope& envelope) {
  if (kind_of(envelope.payload) != envelope.kind) return false;
  if (id_of(envelope.payload) != envelope.id) return false;
  const auto digest = sha256_hex(canonical_payload(envelope.payload));
  if (digest != envelope.contentHash) return false;
  return envelope.id.last_segment() == std::string_view(digest).substr(0, 16);
}

}  // namespace linkflows
