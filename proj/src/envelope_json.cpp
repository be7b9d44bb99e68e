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

#include "linkflows/envelope_json.hpp"

namespace linkflows {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kParse, "malformed record: " + what);
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Iri iri_field(const json& j, const char* key) {
  try {
    return Iri::parse(str_field(j, key));
  } catch (const Error& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

std::optional<Iri> opt_iri(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return iri_field(j, key);
}

Timestamp time_field(const json& j, const char* key) {
  auto t = parse_timestamp(str_field(j, key));
  if (!t) bad(std::string("field '") + key + "' is not a UTC timestamp");
  return *t;
}

template <typename Parse>
auto enum_field(const json& j, const char* key, Parse parse) {
  auto v = parse(str_field(j, key));
  if (!v) bad(std::string("field '") + key + "' has an unknown value");
  return *v;
}

template <typename Parse>
auto opt_enum(const json& j, const char* key, Parse parse)
    -> std::optional<std::decay_t<decltype(*parse(std::string_view{}))>> {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return enum_field(j, key, parse);
}

void put_iri(json& j, const char* key, const Iri& iri) {
  if (!iri.empty()) j[key] = iri.str();
}

}  // namespace

json record_to_json(const NodeRecord& record) {
  json j = json::object();
  put_iri(j, "id", id_of(record));
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SnippetNode>) {
          j["level"] = to_string(r.level);
          j["text"] = r.text;
          j["order"] = r.order;
          if (r.parent) j["parent"] = r.parent->str();
          if (r.previousVersion) j["previousVersion"] = r.previousVersion->str();
          if (!r.subtype.empty()) j["subtype"] = r.subtype;
          j["createdAt"] = format_timestamp(r.createdAt);
        } else if constexpr (std::is_same_v<T, ReviewComment>) {
          j["refersTo"] = r.refersTo.str();
          j["text"] = r.text;
          j["author"] = r.author.str();
          if (r.aspect) j["aspect"] = to_string(*r.aspect);
          if (r.polarity) j["polarity"] = to_string(*r.polarity);
          if (r.actionNeeded) j["actionNeeded"] = to_string(*r.actionNeeded);
          if (r.impact) j["impact"] = r.impact->value();
          if (r.previousVersion) j["previousVersion"] = r.previousVersion->str();
          j["createdAt"] = format_timestamp(r.createdAt);
        } else if constexpr (std::is_same_v<T, ResponseComment>) {
          j["isResponseTo"] = r.isResponseTo.str();
          j["author"] = r.author.str();
          j["text"] = r.text;
          j["agreement"] = to_string(r.agreement);
          j["createdAt"] = format_timestamp(r.createdAt);
        } else if constexpr (std::is_same_v<T, ActionCheckComment>) {
          j["isResponseTo"] = r.isResponseTo.str();
          j["author"] = r.author.str();
          j["text"] = r.text;
          j["status"] = to_string(r.status);
          j["createdAt"] = format_timestamp(r.createdAt);
        } else {
          j["displayName"] = r.displayName;
          j["role"] = to_string(r.role);
        }
      },
      record);
  return j;
}

NodeRecord record_from_json(const json& j, NodeKind kind) {
  if (!j.is_object()) bad("payload is not an object");
  Iri id = j.contains("id") ? iri_field(j, "id") : Iri{};
  switch (kind) {
    case NodeKind::snippet: {
      SnippetNode n;
      n.id = id;
      n.level = enum_field(j, "level", parse_granularity);
      n.text = str_field(j, "text");
      const auto& order = field(j, "order");
      if (!order.is_number_unsigned() && !(order.is_number_integer() && order.get<long long>() >= 0)) {
        bad("field 'order' must be a non-negative integer");
      }
      n.order = order.get<std::uint32_t>();
      n.parent = opt_iri(j, "parent");
      n.previousVersion = opt_iri(j, "previousVersion");
      if (j.contains("subtype")) n.subtype = str_field(j, "subtype");
      n.createdAt = time_field(j, "createdAt");
      return n;
    }
    case NodeKind::reviewComment: {
      ReviewComment c;
      c.id = id;
      c.refersTo = iri_field(j, "refersTo");
      c.text = str_field(j, "text");
      c.author = iri_field(j, "author");
      c.aspect = opt_enum(j, "aspect", parse_aspect);
      c.polarity = opt_enum(j, "polarity", parse_polarity);
      c.actionNeeded = opt_enum(j, "actionNeeded", parse_action_needed);
      if (j.contains("impact") && !j["impact"].is_null()) {
        if (!j["impact"].is_number_integer()) bad("field 'impact' must be an integer");
        c.impact = ImpactScore(j["impact"].get<int>());
      }
      c.previousVersion = opt_iri(j, "previousVersion");
      c.createdAt = time_field(j, "createdAt");
      return c;
    }
    case NodeKind::responseComment: {
      ResponseComment r;
      r.id = id;
      r.isResponseTo = iri_field(j, "isResponseTo");
      r.author = iri_field(j, "author");
      r.text = str_field(j, "text");
      r.agreement = enum_field(j, "agreement", parse_agreement);
      r.createdAt = time_field(j, "createdAt");
      return r;
    }
    case NodeKind::actionCheckComment: {
      ActionCheckComment c;
      c.id = id;
      c.isResponseTo = iri_field(j, "isResponseTo");
      c.author = iri_field(j, "author");
      c.text = str_field(j, "text");
      c.status = enum_field(j, "status", parse_check_status);
      c.createdAt = time_field(j, "createdAt");
      return c;
    }
    case NodeKind::agent: {
      Agent a;
      a.id = id;
      a.displayName = str_field(j, "displayName");
      a.role = enum_field(j, "role", parse_agent_role);
      return a;
    }
  }
  bad("unknown kind");
}

json envelope_to_json(const NodeEnvelope& envelope) {
  json payload = record_to_json(envelope.payload);
  payload.erase("id");
  return json{{"id", envelope.id.str()},
              {"kind", to_string(envelope.kind)},
              {"contentHash", envelope.contentHash},
              {"payload", std::move(payload)}};
}

NodeEnvelope envelope_from_json(const json& j) {
  if (!j.is_object()) bad("envelope is not an object");
  NodeEnvelope e;
  e.id = iri_field(j, "id");
  e.kind = enum_field(j, "kind", parse_node_kind);
  e.contentHash = str_field(j, "contentHash");
  e.payload = record_from_json(field(j, "payload"), e.kind);
  set_id(e.payload, e.id);
  return e;
}

json thread_to_json(const ThreadNode& thread) {
  json j = std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        NodeRecord record{c};
        json out = record_to_json(record);
        if constexpr (std::is_same_v<T, ReviewComment>) {
          out["kind"] = "reviewComment";
        } else if constexpr (std::is_same_v<T, ResponseComment>) {
          out["kind"] = "responseComment";
        } else {
          out["kind"] = "actionCheckComment";
        }
        return out;
      },
      thread.comment);
  json replies = json::array();
  for (const auto& r : thread.replies) replies.push_back(thread_to_json(r));
  j["replies"] = std::move(replies);
  return j;
}

}  // namespace linkflows
