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

#include "linkflows/service.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "linkflows/envelope_json.hpp"
#include "linkflows/ingest.hpp"

namespace linkflows::service {

using nlohmann::json;

namespace {

// Collects field problems instead of failing on the first one.
class BodyReader {
 public:
  explicit BodyReader(const json& body) : body_(body) {
    if (!body.is_object()) add("body-not-object", "request body must be a JSON object");
  }

  std::optional<std::string> text(const char* key) {
    if (!body_.is_object() || !body_.contains(key) || body_[key].is_null()) return std::nullopt;
    if (!body_[key].is_string()) {
      add(std::string(key) + "-invalid", std::string(key) + " must be a string");
      return std::nullopt;
    }
    return body_[key].get<std::string>();
  }

  Iri iri(const char* key) {
    auto s = text(key);
    if (!s || s->empty()) return {};
    auto parsed = Iri::try_parse(*s);
    if (!parsed) add(std::string(key) + "-invalid", std::string(key) + " is not an IRI: " + *s);
    return parsed.value_or(Iri{});
  }

  template <typename Parse>
  auto enumeration(const char* key, Parse parse) -> decltype(parse(std::string_view{})) {
    auto s = text(key);
    if (!s) return std::nullopt;
    auto v = parse(*s);
    if (!v) add(std::string(key) + "-invalid", std::string(key) + " has an unknown value: " + *s);
    return v;
  }

  std::optional<int> integer(const char* key) {
    if (!body_.is_object() || !body_.contains(key) || body_[key].is_null()) return std::nullopt;
    const auto& v = body_[key];
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_string()) {
      try {
        std::size_t used = 0;
        const auto s = v.get<std::string>();
        int n = std::stoi(s, &used);
        if (used == s.size()) return n;
      } catch (const std::exception&) {
      }
    }
    add(std::string(key) + "-invalid", std::string(key) + " must be an integer from 1 to 5");
    return std::nullopt;
  }

  void add(std::string code, std::string message) {
    if (auto dash = code.rfind("-invalid"); dash != std::string::npos) failed.insert(code.substr(0, dash));
    violations.push_back({std::move(code), std::move(message)});
  }

  void raise_if_any() const {
    if (!violations.empty()) {
      throw Error(ErrorCode::kValidationFailed, violations.front().message, violations);
    }
  }

  std::vector<Violation> violations;
  std::set<std::string> failed;

 private:
  const json& body_;
};

// Agent IRI as given, or the IRI of an agent node named `value`.
Iri author_of(GraphStore& store, BodyReader& reader, AgentRole role,
              std::vector<NodeEnvelope>& batch) {
  auto value = reader.text("author");
  if (!value || value->empty()) return {};
  if (Iri::is_valid(*value)) return Iri::parse(*value);
  Agent agent;
  agent.displayName = *value;
  agent.role = role;
  batch.push_back(store.seal(agent));
  return batch.back().id;
}

WriteOutcome commit(GraphStore& store, std::vector<NodeEnvelope> batch) {
  const auto result = store.put_batch(batch);
  WriteOutcome out;
  out.created = result.added > 0;
  out.body = json{{"id", result.ids.back().str()}};
  return out;
}

AgentRole role_from(BodyReader& reader, AgentRole fallback) {
  return reader.enumeration("authorRole", parse_agent_role).value_or(fallback);
}

}  // namespace

WriteOutcome ingest_article(GraphStore& store, std::string_view text, Timestamp now) {
  const auto seg = segment_article(text, store.base_namespace(), now);
  const auto batch = seg.all();
  const auto result = store.put_batch(batch);

  WriteOutcome out;
  out.created = result.added > 0;
  out.body = json{{"article", json::array({seg.root.id.str()})},
                  {"section", json::array()},
                  {"paragraph", json::array()},
                  {"added", result.added},
                  {"reconstructionChecksum", seg.reconstructionChecksum}};
  for (const auto& s : seg.sections) out.body["section"].push_back(s.id.str());
  for (const auto& p : seg.paragraphs) out.body["paragraph"].push_back(p.id.str());
  return out;
}

WriteOutcome add_comment(GraphStore& store, const json& body, Timestamp now) {
  BodyReader reader(body);
  std::vector<NodeEnvelope> batch;
  ReviewComment c;
  c.refersTo = reader.iri("refersTo");
  c.text = reader.text("text").value_or("");
  c.author = author_of(store, reader, role_from(reader, AgentRole::reviewer), batch);
  c.aspect = reader.enumeration("aspect", parse_aspect);
  c.polarity = reader.enumeration("polarity", parse_polarity);
  c.actionNeeded = reader.enumeration("actionNeeded", parse_action_needed);
  if (auto impact = reader.integer("impact")) c.impact = ImpactScore(*impact);
  if (auto prev = reader.iri("previousVersion"); !prev.empty()) c.previousVersion = prev;
  c.createdAt = now;

  // Field-level problems first; a field that failed to parse is not
  // reported again as missing.
  static const std::map<std::string, std::string> kFieldOf{
      {"target-required", "refersTo"},   {"author-required", "author"},
      {"aspect-required", "aspect"},     {"polarity-required", "polarity"},
      {"action-needed-required", "actionNeeded"}, {"impact-required", "impact"}};
  for (auto& v : validate_comment(c, [](const Iri&) { return true; }).violations) {
    auto field = kFieldOf.find(v.code);
    if (field == kFieldOf.end() || !reader.failed.contains(field->second)) {
      reader.violations.push_back(std::move(v));
    }
  }
  reader.raise_if_any();
  batch.push_back(store.seal(c));
  return commit(store, std::move(batch));
}

WriteOutcome add_response(GraphStore& store, const json& body, Timestamp now) {
  BodyReader reader(body);
  std::vector<NodeEnvelope> batch;
  ResponseComment r;
  r.isResponseTo = reader.iri("isResponseTo");
  r.text = reader.text("text").value_or("");
  r.author = author_of(store, reader, role_from(reader, AgentRole::author), batch);
  auto agreement = reader.enumeration("agreement", parse_agreement);
  if (!agreement && !body.contains("agreement")) reader.add("agreement-required", "agreement required");
  r.agreement = agreement.value_or(Agreement::agree);
  r.createdAt = now;
  if (r.isResponseTo.empty()) reader.add("parent-required", "isResponseTo required");
  reader.raise_if_any();
  batch.push_back(store.seal(r));
  return commit(store, std::move(batch));
}

WriteOutcome add_check(GraphStore& store, const json& body, Timestamp now) {
  BodyReader reader(body);
  std::vector<NodeEnvelope> batch;
  ActionCheckComment c;
  c.isResponseTo = reader.iri("isResponseTo");
  c.text = reader.text("text").value_or("");
  c.author = author_of(store, reader, role_from(reader, AgentRole::editor), batch);
  auto status = reader.enumeration("status", parse_check_status);
  if (!status && !body.contains("status")) reader.add("status-required", "status required");
  c.status = status.value_or(CheckStatus::addressed);
  c.createdAt = now;
  if (c.isResponseTo.empty()) reader.add("parent-required", "isResponseTo required");
  reader.raise_if_any();
  batch.push_back(store.seal(c));
  return commit(store, std::move(batch));
}

json threads_on(const Snapshot& view, const Iri& node) {
  if (!view.find(node)) throw Error(ErrorCode::kNotFound, "unknown node " + node.str());
  json out = json::array();
  auto comments = view.comments_on(node);
  std::sort(comments.begin(), comments.end(), [](const NodeRecord* a, const NodeRecord* b) {
    return std::pair(created_at(*a), id_of(*a)) < std::pair(created_at(*b), id_of(*b));
  });
  for (const auto* c : comments) out.push_back(thread_to_json(thread_of(id_of(*c), view)));
  return out;
}

const NodeEnvelope* resolve_node(const Snapshot& view, std::string_view base,
                                 std::string_view path) {
  if (auto iri = Iri::try_parse(std::string(base) + std::string(path))) {
    if (const auto* e = view.envelope(*iri)) return e;
  }
  const auto slash = path.rfind('/');
  const auto suffix = slash == std::string_view::npos ? path : path.substr(slash + 1);
  return view.envelope_by_suffix(suffix);
}

}  // namespace linkflows::service
