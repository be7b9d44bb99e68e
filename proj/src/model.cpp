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

#include "linkflows/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace linkflows {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E v) {
  for (const auto& [value, name] : table) {
    if (value == v) return name;
  }
  return "?";
}

constexpr std::array<std::pair<AgentRole, std::string_view>, 6> kRoles{{
    {AgentRole::reviewer, "reviewer"},
    {AgentRole::author, "author"},
    {AgentRole::editor, "editor"},
    {AgentRole::peer, "peer"},
    {AgentRole::modelExpert, "modelExpert"},
    {AgentRole::tool, "tool"},
}};
constexpr std::array<std::pair<GranularityLevel, std::string_view>, 3> kLevels{{
    {GranularityLevel::article, "article"},
    {GranularityLevel::section, "section"},
    {GranularityLevel::paragraph, "paragraph"},
}};
constexpr std::array<std::pair<Aspect, std::string_view>, 3> kAspects{{
    {Aspect::syntax, "syntax"},
    {Aspect::style, "style"},
    {Aspect::content, "content"},
}};
constexpr std::array<std::pair<Polarity, std::string_view>, 3> kPolarities{{
    {Polarity::negative, "negative"},
    {Polarity::neutral, "neutral"},
    {Polarity::positive, "positive"},
}};
constexpr std::array<std::pair<ActionNeeded, std::string_view>, 3> kActions{{
    {ActionNeeded::actionNeeded, "actionNeeded"},
    {ActionNeeded::suggestion, "suggestion"},
    {ActionNeeded::noActionNeeded, "noActionNeeded"},
}};
constexpr std::array<std::pair<Agreement, std::string_view>, 3> kAgreements{{
    {Agreement::agree, "agree"},
    {Agreement::partiallyAgree, "partiallyAgree"},
    {Agreement::disagree, "disagree"},
}};
constexpr std::array<std::pair<CheckStatus, std::string_view>, 3> kStatuses{{
    {CheckStatus::addressed, "addressed"},
    {CheckStatus::partiallyAddressed, "partiallyAddressed"},
    {CheckStatus::notAddressed, "notAddressed"},
}};
constexpr std::array<std::pair<NodeKind, std::string_view>, 5> kKinds{{
    {NodeKind::snippet, "snippet"},
    {NodeKind::reviewComment, "reviewComment"},
    {NodeKind::responseComment, "responseComment"},
    {NodeKind::actionCheckComment, "actionCheckComment"},
    {NodeKind::agent, "agent"},
}};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

}  // namespace

std::string_view to_string(AgentRole v) { return name_of(kRoles, v); }
std::string_view to_string(GranularityLevel v) { return name_of(kLevels, v); }
std::string_view to_string(Aspect v) { return name_of(kAspects, v); }
std::string_view to_string(Polarity v) { return name_of(kPolarities, v); }
std::string_view to_string(ActionNeeded v) { return name_of(kActions, v); }
std::string_view to_string(Agreement v) { return name_of(kAgreements, v); }
std::string_view to_string(CheckStatus v) { return name_of(kStatuses, v); }
std::string_view to_string(NodeKind k) { return name_of(kKinds, k); }

std::optional<AgentRole> parse_agent_role(std::string_view s) { return lookup(kRoles, s); }
std::optional<GranularityLevel> parse_granularity(std::string_view s) {
  return lookup(kLevels, s);
}
std::optional<Aspect> parse_aspect(std::string_view s) { return lookup(kAspects, s); }
std::optional<Polarity> parse_polarity(std::string_view s) { return lookup(kPolarities, s); }
std::optional<ActionNeeded> parse_action_needed(std::string_view s) {
  return lookup(kActions, s);
}
std::optional<Agreement> parse_agreement(std::string_view s) { return lookup(kAgreements, s); }
std::optional<CheckStatus> parse_check_status(std::string_view s) {
  return lookup(kStatuses, s);
}
std::optional<NodeKind> parse_node_kind(std::string_view s) { return lookup(kKinds, s); }

double ordinal_value(Polarity p) noexcept {
  switch (p) {
    case Polarity::negative: return 0.0;
    case Polarity::neutral: return 0.5;
    case Polarity::positive: return 1.0;
  }
  return 0.5;
}

Polarity polarity_from_ordinal(double v) {
  const auto step = std::lround(2.0 * v);
  if (step < 0 || step > 2 || std::abs(2.0 * v - static_cast<double>(step)) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "not a polarity ordinal value");
  }
  return static_cast<Polarity>(step);
}

ImpactScore ImpactScore::from_normalized(double n) {
  return ImpactScore(static_cast<int>(std::lround(4.0 * n + 1.0)));
}

NodeKind kind_of(const NodeRecord& record) noexcept {
  return static_cast<NodeKind>(record.index());
}

const Iri& id_of(const NodeRecord& record) noexcept {
  return std::visit([](const auto& r) -> const Iri& { return r.id; }, record);
}

void set_id(NodeRecord& record, Iri id) {
  std::visit([&](auto& r) { r.id = std::move(id); }, record);
}

Timestamp created_at(const NodeRecord& record) noexcept {
  return std::visit(
      [](const auto& r) -> Timestamp {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Agent>) {
          return Timestamp{};
        } else {
          return r.createdAt;
        }
      },
      record);
}

const Iri& id_of(const CommentRecord& comment) noexcept {
  return std::visit([](const auto& c) -> const Iri& { return c.id; }, comment);
}

Timestamp created_at(const CommentRecord& comment) noexcept {
  return std::visit([](const auto& c) { return c.createdAt; }, comment);
}

std::optional<CommentRecord> as_comment(const NodeRecord& record) {
  if (const auto* c = std::get_if<ReviewComment>(&record)) return CommentRecord{*c};
  if (const auto* c = std::get_if<ResponseComment>(&record)) return CommentRecord{*c};
  if (const auto* c = std::get_if<ActionCheckComment>(&record)) return CommentRecord{*c};
  return std::nullopt;
}

std::vector<const NodeRecord*> StoreView::comments_on(const Iri& target) const {
  std::vector<const NodeRecord*> out;
  for (const auto* node : all()) {
    if (const auto* c = std::get_if<ReviewComment>(node); c && c->refersTo == target) {
      out.push_back(node);
    }
  }
  return out;
}

std::vector<const NodeRecord*> StoreView::replies_to(const Iri& parent) const {
  std::vector<const NodeRecord*> out;
  for (const auto* node : all()) {
    const Iri* p = nullptr;
    if (const auto* r = std::get_if<ResponseComment>(node)) p = &r->isResponseTo;
    if (const auto* c = std::get_if<ActionCheckComment>(node)) p = &c->isResponseTo;
    if (p && *p == parent) out.push_back(node);
  }
  return out;
}

bool ValidationResult::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationResult validate_comment(const ReviewComment& comment,
                                  const ExistenceOracle& resolves,
                                  const StoreView* view) {
  ValidationResult result;
  auto add = [&](std::string code, std::string message) {
    result.violations.push_back({std::move(code), std::move(message)});
  };

  if (comment.refersTo.empty()) {
    add("target-required", "refersTo required");
  } else if (!resolves(comment.refersTo)) {
    add("dangling-target", "dangling target: " + comment.refersTo.str());
  } else if (view) {
    const auto* target = view->find(comment.refersTo);
    if (target && !std::holds_alternative<SnippetNode>(*target)) {
      add("target-not-snippet", "refersTo must name a snippet node");
    }
  }
  if (blank(comment.text)) add("text-empty", "comment text is empty");
  if (comment.author.empty()) add("author-required", "author required");
  if (!comment.aspect) add("aspect-required", "aspect required");
  if (!comment.polarity) add("polarity-required", "polarity required");
  if (!comment.actionNeeded) add("action-needed-required", "actionNeeded required");
  if (!comment.impact) {
    add("impact-required", "impact required");
  } else if (!comment.impact->valid()) {
    add("impact-out-of-range", "impact out of range: " +
                                   std::to_string(comment.impact->value()) +
                                   " (expected 1..5)");
  }
  if (comment.previousVersion) {
    if (!resolves(*comment.previousVersion)) {
      add("dangling-previous-version", "previous version does not resolve");
    } else if (view) {
      const auto* prev = view->find(*comment.previousVersion);
      if (prev && !std::holds_alternative<ReviewComment>(*prev)) {
        add("previous-version-kind", "previous version must be a review comment");
      }
    }
  }
  return result;
}

namespace {

void check_reply_parent(const Iri& parent, const StoreView& view,
                        ValidationResult& result) {
  if (parent.empty()) {
    result.violations.push_back({"parent-required", "isResponseTo required"});
    return;
  }
  const auto* node = view.find(parent);
  if (!node) {
    result.violations.push_back({"dangling-parent", "unknown parent comment: " + parent.str()});
    return;
  }
  if (!std::holds_alternative<ReviewComment>(*node) &&
      !std::holds_alternative<ResponseComment>(*node)) {
    result.violations.push_back(
        {"parent-kind", "isResponseTo must name a review or response comment"});
  }
}

ValidationResult validate_snippet(const SnippetNode& node, const StoreView& view) {
  ValidationResult result;
  auto add = [&](std::string code, std::string message) {
    result.violations.push_back({std::move(code), std::move(message)});
  };
  if (blank(node.text)) add("text-empty", "snippet text is empty");
  if (node.level == GranularityLevel::article) {
    if (node.parent) add("article-has-parent", "article nodes have no parent");
  } else if (!node.parent) {
    add("parent-required", "section and paragraph nodes need a parent");
  } else if (const auto* parent = view.find(*node.parent); !parent) {
    add("dangling-parent", "unknown parent: " + node.parent->str());
  } else if (const auto* p = std::get_if<SnippetNode>(parent); !p) {
    add("parent-kind", "parent must be a snippet");
  } else {
    const bool ok = node.level == GranularityLevel::section
                        ? p->level == GranularityLevel::article
                        : p->level != GranularityLevel::paragraph;
    if (!ok) {
      add("parent-level", std::string(to_string(node.level)) + " cannot be nested in " +
                              std::string(to_string(p->level)));
    }
  }
  if (node.previousVersion) {
    const auto* prev = view.find(*node.previousVersion);
    if (!prev) {
      add("dangling-previous-version", "previous version does not resolve");
    } else if (const auto* p = std::get_if<SnippetNode>(prev); !p || p->level != node.level) {
      add("previous-version-level", "previous version must be a snippet of the same level");
    }
  }
  return result;
}

}  // namespace

ValidationResult validate_record(const NodeRecord& record, const StoreView& view) {
  return std::visit(
      [&](const auto& r) -> ValidationResult {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SnippetNode>) {
          return validate_snippet(r, view);
        } else if constexpr (std::is_same_v<T, ReviewComment>) {
          return validate_comment(
              r, [&](const Iri& id) { return view.contains(id); }, &view);
        } else if constexpr (std::is_same_v<T, Agent>) {
          ValidationResult result;
          if (blank(r.displayName)) {
            result.violations.push_back({"name-required", "agent display name required"});
          }
          return result;
        } else {
          ValidationResult result;
          check_reply_parent(r.isResponseTo, view, result);
          if (r.author.empty()) {
            result.violations.push_back({"author-required", "author required"});
          }
          return result;
        }
      },
      record);
}

}  // namespace linkflows
