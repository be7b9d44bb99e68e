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

// Domain types of the Linkflows reviewing model: article snippets, classified
// review comments, author responses and action checks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linkflows/errors.hpp"
#include "linkflows/iri.hpp"
#include "linkflows/time.hpp"

namespace linkflows {

enum class AgentRole { reviewer, author, editor, peer, modelExpert, tool };
enum class GranularityLevel { article, section, paragraph };
enum class Aspect { syntax, style, content };
enum class Polarity { negative, neutral, positive };
enum class ActionNeeded { actionNeeded, suggestion, noActionNeeded };
enum class Agreement { agree, partiallyAgree, disagree };
enum class CheckStatus { addressed, partiallyAddressed, notAddressed };

std::string_view to_string(AgentRole v);
std::string_view to_string(GranularityLevel v);
std::string_view to_string(Aspect v);
std::string_view to_string(Polarity v);
std::string_view to_string(ActionNeeded v);
std::string_view to_string(Agreement v);
std::string_view to_string(CheckStatus v);

// Parsers accept exactly the spellings produced by to_string.
std::optional<AgentRole> parse_agent_role(std::string_view s);
std::optional<GranularityLevel> parse_granularity(std::string_view s);
std::optional<Aspect> parse_aspect(std::string_view s);
std::optional<Polarity> parse_polarity(std::string_view s);
std::optional<ActionNeeded> parse_action_needed(std::string_view s);
std::optional<Agreement> parse_agreement(std::string_view s);
std::optional<CheckStatus> parse_check_status(std::string_view s);

// negative -> 0, neutral -> 0.5, positive -> 1
double ordinal_value(Polarity p) noexcept;
Polarity polarity_from_ordinal(double v);

// Reviewer-assigned impact in [1, 5]. Out-of-range values are representable
// so that validation can report them instead of failing construction.
class ImpactScore {
 public:
  constexpr explicit ImpactScore(int value) noexcept : value_(value) {}

  constexpr int value() const noexcept { return value_; }
  constexpr bool valid() const noexcept { return value_ >= 1 && value_ <= 5; }
  constexpr double normalized() const noexcept { return (value_ - 1) / 4.0; }
  static ImpactScore from_normalized(double n);

  bool operator==(const ImpactScore&) const = default;

 private:
  int value_;
};

struct Agent {
  Iri id;
  std::string displayName;
  AgentRole role = AgentRole::reviewer;

  bool operator==(const Agent&) const = default;
};

struct SnippetNode {
  Iri id;
  GranularityLevel level = GranularityLevel::paragraph;
  std::string text;
  std::optional<Iri> parent;
  std::uint32_t order = 0;
  std::optional<Iri> previousVersion;
  // Free-text refinement of paragraph-level structure ("figure", "table"...).
  std::string subtype;
  Timestamp createdAt{};

  bool operator==(const SnippetNode&) const = default;
};

// Classification fields are optional so that incomplete input can be
// represented and rejected by validate_comment.
struct ReviewComment {
  Iri id;
  Iri refersTo;
  std::string text;
  Iri author;
  std::optional<Aspect> aspect;
  std::optional<Polarity> polarity;
  std::optional<ActionNeeded> actionNeeded;
  std::optional<ImpactScore> impact;
  std::optional<Iri> previousVersion;
  Timestamp createdAt{};

  bool operator==(const ReviewComment&) const = default;
};

struct ResponseComment {
  Iri id;
  Iri isResponseTo;
  Iri author;
  std::string text;
  Agreement agreement = Agreement::agree;
  Timestamp createdAt{};

  bool operator==(const ResponseComment&) const = default;
};

struct ActionCheckComment {
  Iri id;
  Iri isResponseTo;
  Iri author;
  std::string text;
  CheckStatus status = CheckStatus::addressed;
  Timestamp createdAt{};

  bool operator==(const ActionCheckComment&) const = default;
};

enum class NodeKind { snippet, reviewComment, responseComment, actionCheckComment, agent };

std::string_view to_string(NodeKind k);
std::optional<NodeKind> parse_node_kind(std::string_view s);

// Alternative order matches NodeKind.
using NodeRecord =
    std::variant<SnippetNode, ReviewComment, ResponseComment, ActionCheckComment, Agent>;
using CommentRecord = std::variant<ReviewComment, ResponseComment, ActionCheckComment>;

NodeKind kind_of(const NodeRecord& record) noexcept;
const Iri& id_of(const NodeRecord& record) noexcept;
void set_id(NodeRecord& record, Iri id);
// Agents carry no timestamp; they sort at the epoch.
Timestamp created_at(const NodeRecord& record) noexcept;

const Iri& id_of(const CommentRecord& comment) noexcept;
Timestamp created_at(const CommentRecord& comment) noexcept;
std::optional<CommentRecord> as_comment(const NodeRecord& record);

// Read access to a consistent set of nodes.
class StoreView {
 public:
  virtual ~StoreView() = default;

  virtual const NodeRecord* find(const Iri& id) const = 0;
  // Every node, in insertion order.
  virtual std::vector<const NodeRecord*> all() const = 0;

  // Review comments whose refersTo is `target`. Default scans all().
  virtual std::vector<const NodeRecord*> comments_on(const Iri& target) const;
  // Responses and action checks whose isResponseTo is `parent`.
  virtual std::vector<const NodeRecord*> replies_to(const Iri& parent) const;

  bool contains(const Iri& id) const { return find(id) != nullptr; }
};

using ExistenceOracle = std::function<bool(const Iri&)>;

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view code) const;
};

// Checks every ReviewComment invariant. `resolves` answers whether the target
// exists; `view`, when given, additionally checks that it is a snippet.
ValidationResult validate_comment(const ReviewComment& comment,
                                  const ExistenceOracle& resolves,
                                  const StoreView* view = nullptr);

// Structural checks of any record against a view of already-known nodes.
ValidationResult validate_record(const NodeRecord& record, const StoreView& view);

// Comment thread rooted at a review comment. Replies sorted by (createdAt, Iri).
struct ThreadNode {
  CommentRecord comment;
  std::vector<ThreadNode> replies;

  std::size_t size() const;
  // Longest chain of replies below this node; 0 without replies.
  std::size_t depth() const;
};

// Full reply tree containing `comment_id`. Throws kUnknownId, or
// kCycleDetected when isResponseTo links loop.
ThreadNode thread_of(const Iri& comment_id, const StoreView& view);

// `node_id` followed by its predecessors, newest first. Works for snippets and
// review comments. Throws kUnknownId or kCycleDetected.
std::vector<NodeRecord> version_history(const Iri& node_id, const StoreView& view);

}  // namespace linkflows
