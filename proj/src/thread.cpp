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

#include <algorithm>
#include <unordered_set>

#include "linkflows/model.hpp"

namespace linkflows {

namespace {

const Iri* reply_parent(const NodeRecord& node) {
  if (const auto* r = std::get_if<ResponseComment>(&node)) return &r->isResponseTo;
  if (const auto* c = std::get_if<ActionCheckComment>(&node)) return &c->isResponseTo;
  return nullptr;
}

ThreadNode build(const NodeRecord& node, const StoreView& view,
                 std::unordered_set<Iri>& on_path) {
  ThreadNode tree{*as_comment(node), {}};
  const Iri& id = id_of(node);
  if (!on_path.insert(id).second) {
    throw Error(ErrorCode::kCycleDetected, "isResponseTo cycle through " + id.str());
  }
  auto replies = view.replies_to(id);
  std::sort(replies.begin(), replies.end(), [](const NodeRecord* a, const NodeRecord* b) {
    const auto ta = created_at(*a), tb = created_at(*b);
    if (ta != tb) return ta < tb;
    return id_of(*a) < id_of(*b);
  });
  for (const auto* reply : replies) {
    tree.replies.push_back(build(*reply, view, on_path));
  }
  on_path.erase(id);
  return tree;
}

}  // namespace

std::size_t ThreadNode::size() const {
  std::size_t n = 1;
  for (const auto& r : replies) n += r.size();
  return n;
}

std::size_t ThreadNode::depth() const {
  std::size_t d = 0;
  for (const auto& r : replies) d = std::max(d, r.depth() + 1);
  return d;
}

ThreadNode thread_of(const Iri& comment_id, const StoreView& view) {
  const NodeRecord* node = view.find(comment_id);
  if (!node || !as_comment(*node)) {
    throw Error(ErrorCode::kUnknownId, "no comment with id " + comment_id.str());
  }
  std::unordered_set<Iri> seen{comment_id};
  while (const Iri* parent = reply_parent(*node)) {
    if (!seen.insert(*parent).second) {
      throw Error(ErrorCode::kCycleDetected, "isResponseTo cycle through " + parent->str());
    }
    node = view.find(*parent);
    if (!node || !as_comment(*node)) {
      throw Error(ErrorCode::kReferenceUnresolved,
                  "reply chain of " + comment_id.str() + " breaks at " + parent->str());
    }
  }
  std::unordered_set<Iri> on_path;
  return build(*node, view, on_path);
}

std::vector<NodeRecord> version_history(const Iri& node_id, const StoreView& view) {
  const NodeRecord* node = view.find(node_id);
  if (!node) throw Error(ErrorCode::kUnknownId, "unknown node " + node_id.str());

  auto previous = [](const NodeRecord& n) -> const std::optional<Iri>* {
    if (const auto* s = std::get_if<SnippetNode>(&n)) return &s->previousVersion;
    if (const auto* c = std::get_if<ReviewComment>(&n)) return &c->previousVersion;
    return nullptr;
  };

  std::vector<NodeRecord> history{*node};
  std::unordered_set<Iri> seen{node_id};
  for (auto prev = previous(*node); prev && prev->has_value(); prev = previous(*node)) {
    const Iri& next = **prev;
    if (!seen.insert(next).second) {
      throw Error(ErrorCode::kCycleDetected, "isUpdateOf cycle through " + next.str());
    }
    node = view.find(next);
    if (!node) {
      throw Error(ErrorCode::kReferenceUnresolved, "missing previous version " + next.str());
    }
    history.push_back(*node);
  }
  return history;
}

}  // namespace linkflows
