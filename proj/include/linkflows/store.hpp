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

// Append-only, content-addressed node store.
//
// On-disk layout (one directory):
//   manifest.json    {"baseNamespace","createdAt","nodeCount","schemaVersion"}
//   envelopes.jsonl  one envelope object per line, each batch closed by a
//                    {"commit":N} line; lines after the last commit are a torn
//                    write and are discarded on open.
// See docs/store-format.md for the byte-level description.

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkflows/canonical.hpp"
#include "linkflows/model.hpp"

namespace linkflows {

inline constexpr std::string_view kStoreSchemaVersion = "linkflows-store/1";

struct StoreManifest {
  std::string baseNamespace;
  std::size_t nodeCount = 0;
  Timestamp createdAt{};
  std::string schemaVersion{kStoreSchemaVersion};
};

// All supplied criteria must hold. `target` matches refersTo (review
// comments), isResponseTo (responses, checks) or parent (snippets). `level`
// matches a snippet's level or the level of a review comment's target.
struct QueryFilter {
  std::optional<NodeKind> kind;
  std::optional<Iri> target;
  std::optional<Iri> author;
  std::optional<GranularityLevel> level;
  std::optional<Aspect> aspect;
  std::optional<Polarity> polarity;
  std::optional<ActionNeeded> actionNeeded;
  std::optional<int> impact;
  std::optional<Agreement> agreement;
  std::optional<CheckStatus> status;
};

// Immutable view of the store at one point in time.
class Snapshot final : public StoreView {
 public:
  const NodeRecord* find(const Iri& id) const override;
  std::vector<const NodeRecord*> all() const override;
  std::vector<const NodeRecord*> comments_on(const Iri& target) const override;
  std::vector<const NodeRecord*> replies_to(const Iri& parent) const override;

  const NodeEnvelope* envelope(const Iri& id) const;
  // Lookup by the 16-hex-char id suffix.
  const NodeEnvelope* envelope_by_suffix(std::string_view suffix) const;
  const std::vector<std::shared_ptr<const NodeEnvelope>>& envelopes() const {
    return order_;
  }
  std::size_t size() const { return order_.size(); }

  std::vector<NodeEnvelope> query(const QueryFilter& filter) const;

 private:
  friend class GraphStore;
  void add(std::shared_ptr<const NodeEnvelope> envelope);

  std::vector<std::shared_ptr<const NodeEnvelope>> order_;
  std::unordered_map<Iri, std::shared_ptr<const NodeEnvelope>> by_id_;
  std::unordered_map<std::string, Iri> by_suffix_;
  std::unordered_map<Iri, std::vector<const NodeRecord*>> comments_on_;
  std::unordered_map<Iri, std::vector<const NodeRecord*>> replies_to_;
};

struct PutResult {
  std::vector<Iri> ids;   // one per input envelope, in input order
  std::size_t added = 0;  // envelopes that were not already stored
};

// Single writer, many readers. Readers work on immutable snapshots; writers
// are serialized and publish a new snapshot after the log is synced.
class GraphStore {
 public:
  // Throws kIo when the directory already holds a store.
  static GraphStore create(const std::filesystem::path& dir, std::string base_namespace);
  // Throws kNotFound when there is no store, kIntegrity on a corrupt log.
  static GraphStore open(const std::filesystem::path& dir);
  static GraphStore open_or_create(const std::filesystem::path& dir,
                                   std::string base_namespace);
  // Non-persistent store, same semantics.
  static GraphStore in_memory(std::string base_namespace);
  static bool exists(const std::filesystem::path& dir);

  GraphStore(GraphStore&&) noexcept;
  GraphStore& operator=(GraphStore&&) noexcept;
  ~GraphStore();

  StoreManifest manifest() const;
  const std::string& base_namespace() const;
  std::shared_ptr<const Snapshot> snapshot() const;

  // Mints the id of `record` under this store's namespace.
  NodeEnvelope seal(NodeRecord record) const;

  // Validates and appends. Re-putting a stored envelope is a no-op.
  // Throws kValidationFailed / kReferenceUnresolved (with violations) or
  // kCollision when a different payload already owns the id.
  Iri put(const NodeEnvelope& envelope);
  // All-or-nothing; references may point into the same batch.
  PutResult put_batch(const std::vector<NodeEnvelope>& batch);

  // Throws kNotFound, or kIntegrity when the stored payload no longer
  // matches its content hash.
  NodeEnvelope get(const Iri& id) const;
  std::vector<NodeEnvelope> query(const QueryFilter& filter) const;

  // Verifies every envelope and reference; returns the problems found.
  std::vector<Violation> check_integrity() const;

 private:
  struct State;
  explicit GraphStore(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

}  // namespace linkflows
