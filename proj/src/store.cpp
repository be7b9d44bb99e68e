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

#include "linkflows/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "linkflows/envelope_json.hpp"

namespace linkflows {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kLogFile = "envelopes.jsonl";

[[noreturn]] void io_fail(const std::string& what) {
  throw Error(ErrorCode::kIo, what + ": " + std::strerror(errno));
}

void write_all(int fd, std::string_view bytes, const std::string& what) {
  while (!bytes.empty()) {
    const auto n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail(what);
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

json manifest_json(const StoreManifest& m) {
  return json{{"baseNamespace", m.baseNamespace},
              {"createdAt", format_timestamp(m.createdAt)},
              {"nodeCount", m.nodeCount},
              {"schemaVersion", m.schemaVersion}};
}

void write_manifest(const fs::path& dir, const StoreManifest& m) {
  const auto tmp = dir / (std::string(kManifestFile) + ".tmp");
  const auto text = manifest_json(m).dump(2) + "\n";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) io_fail("cannot write " + tmp.string());
  write_all(fd, text, tmp.string());
  ::fsync(fd);
  ::close(fd);
  fs::rename(tmp, dir / kManifestFile);
}

bool is_namespace(std::string_view base) {
  return !base.empty() && base.back() == '/' && Iri::is_valid(base);
}

const Iri* target_of(const NodeRecord& node) {
  if (const auto* c = std::get_if<ReviewComment>(&node)) return &c->refersTo;
  if (const auto* r = std::get_if<ResponseComment>(&node)) return &r->isResponseTo;
  if (const auto* k = std::get_if<ActionCheckComment>(&node)) return &k->isResponseTo;
  if (const auto* s = std::get_if<SnippetNode>(&node)) return s->parent ? &*s->parent : nullptr;
  return nullptr;
}

const Iri* author_of(const NodeRecord& node) {
  if (const auto* c = std::get_if<ReviewComment>(&node)) return &c->author;
  if (const auto* r = std::get_if<ResponseComment>(&node)) return &r->author;
  if (const auto* k = std::get_if<ActionCheckComment>(&node)) return &k->author;
  return nullptr;
}

// Snapshot plus not-yet-committed batch members.
class OverlayView final : public StoreView {
 public:
  explicit OverlayView(const Snapshot& base) : base_(base) {}

  void add(const NodeRecord& record) {
    if (extra_.emplace(id_of(record), &record).second) order_.push_back(&record);
  }
  const NodeRecord* find(const Iri& id) const override {
    if (const auto* n = base_.find(id)) return n;
    auto it = extra_.find(id);
    return it == extra_.end() ? nullptr : it->second;
  }
  std::vector<const NodeRecord*> all() const override {
    auto out = base_.all();
    out.insert(out.end(), order_.begin(), order_.end());
    return out;
  }

 private:
  const Snapshot& base_;
  std::unordered_map<Iri, const NodeRecord*> extra_;
  std::vector<const NodeRecord*> order_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Snapshot

const NodeRecord* Snapshot::find(const Iri& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &it->second->payload;
}

std::vector<const NodeRecord*> Snapshot::all() const {
  std::vector<const NodeRecord*> out;
  out.reserve(order_.size());
  for (const auto& e : order_) out.push_back(&e->payload);
  return out;
}

std::vector<const NodeRecord*> Snapshot::comments_on(const Iri& target) const {
  auto it = comments_on_.find(target);
  return it == comments_on_.end() ? std::vector<const NodeRecord*>{} : it->second;
}

std::vector<const NodeRecord*> Snapshot::replies_to(const Iri& parent) const {
  auto it = replies_to_.find(parent);
  return it == replies_to_.end() ? std::vector<const NodeRecord*>{} : it->second;
}

const NodeEnvelope* Snapshot::envelope(const Iri& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : it->second.get();
}

const NodeEnvelope* Snapshot::envelope_by_suffix(std::string_view suffix) const {
  auto it = by_suffix_.find(std::string(suffix));
  return it == by_suffix_.end() ? nullptr : envelope(it->second);
}

void Snapshot::add(std::shared_ptr<const NodeEnvelope> envelope) {
  const NodeRecord* record = &envelope->payload;
  if (const auto* c = std::get_if<ReviewComment>(record)) {
    comments_on_[c->refersTo].push_back(record);
  } else if (std::holds_alternative<ResponseComment>(*record) ||
             std::holds_alternative<ActionCheckComment>(*record)) {
    replies_to_[*target_of(*record)].push_back(record);
  }
  by_suffix_.emplace(std::string(envelope->id.last_segment()), envelope->id);
  by_id_.emplace(envelope->id, envelope);
  order_.push_back(std::move(envelope));
}

std::vector<NodeEnvelope> Snapshot::query(const QueryFilter& f) const {
  auto level_of = [&](const NodeRecord& node) -> std::optional<GranularityLevel> {
    if (const auto* s = std::get_if<SnippetNode>(&node)) return s->level;
    if (const auto* c = std::get_if<ReviewComment>(&node)) {
      if (const auto* t = find(c->refersTo)) {
        if (const auto* s = std::get_if<SnippetNode>(t)) return s->level;
      }
    }
    return std::nullopt;
  };
  auto matches = [&](const NodeEnvelope& e) {
    const NodeRecord& n = e.payload;
    if (f.kind && e.kind != *f.kind) return false;
    if (f.target) {
      const Iri* t = target_of(n);
      if (!t || *t != *f.target) return false;
    }
    if (f.author) {
      const Iri* a = author_of(n);
      if (!a || *a != *f.author) return false;
    }
    if (f.level && level_of(n) != f.level) return false;
    const auto* rc = std::get_if<ReviewComment>(&n);
    if (f.aspect && (!rc || rc->aspect != f.aspect)) return false;
    if (f.polarity && (!rc || rc->polarity != f.polarity)) return false;
    if (f.actionNeeded && (!rc || rc->actionNeeded != f.actionNeeded)) return false;
    if (f.impact && (!rc || !rc->impact || rc->impact->value() != *f.impact)) return false;
    if (f.agreement) {
      const auto* r = std::get_if<ResponseComment>(&n);
      if (!r || r->agreement != *f.agreement) return false;
    }
    if (f.status) {
      const auto* k = std::get_if<ActionCheckComment>(&n);
      if (!k || k->status != *f.status) return false;
    }
    return true;
  };

  std::vector<const NodeEnvelope*> hits;
  for (const auto& e : order_) {
    if (matches(*e)) hits.push_back(e.get());
  }
  std::sort(hits.begin(), hits.end(), [](const NodeEnvelope* a, const NodeEnvelope* b) {
    const auto ta = created_at(a->payload), tb = created_at(b->payload);
    if (ta != tb) return ta < tb;
    return a->id < b->id;
  });
  std::vector<NodeEnvelope> out;
  out.reserve(hits.size());
  for (const auto* e : hits) out.push_back(*e);
  return out;
}

// ---------------------------------------------------------------------------
// GraphStore

struct GraphStore::State {
  std::optional<fs::path> dir;
  StoreManifest manifest;
  std::uintmax_t committed_log_bytes = 0;

  mutable std::mutex snapshot_mutex;
  std::shared_ptr<const Snapshot> current = std::make_shared<Snapshot>();
  std::mutex write_mutex;

  fs::path log_path() const { return *dir / kLogFile; }
};

GraphStore::GraphStore(std::unique_ptr<State> state) : state_(std::move(state)) {}
GraphStore::GraphStore(GraphStore&&) noexcept = default;
GraphStore& GraphStore::operator=(GraphStore&&) noexcept = default;
GraphStore::~GraphStore() = default;

bool GraphStore::exists(const fs::path& dir) {
  return fs::exists(dir / kManifestFile);
}

GraphStore GraphStore::in_memory(std::string base_namespace) {
  if (!is_namespace(base_namespace)) {
    throw Error(ErrorCode::kInvalidArgument,
                "base namespace must be an absolute IRI ending in '/': " + base_namespace);
  }
  auto state = std::make_unique<State>();
  state->manifest.baseNamespace = std::move(base_namespace);
  state->manifest.createdAt = now_utc();
  return GraphStore(std::move(state));
}

GraphStore GraphStore::create(const fs::path& dir, std::string base_namespace) {
  if (exists(dir)) throw Error(ErrorCode::kIo, "store already exists at " + dir.string());
  GraphStore store = in_memory(std::move(base_namespace));
  fs::create_directories(dir);
  store.state_->dir = dir;
  const int fd = ::open((dir / kLogFile).c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) io_fail("cannot create log in " + dir.string());
  ::close(fd);
  write_manifest(dir, store.state_->manifest);
  return store;
}

GraphStore GraphStore::open(const fs::path& dir) {
  if (!exists(dir)) throw Error(ErrorCode::kNotFound, "no store at " + dir.string());

  auto state = std::make_unique<State>();
  state->dir = dir;
  {
    std::ifstream in(dir / kManifestFile);
    json m;
    try {
      m = json::parse(in);
      state->manifest.baseNamespace = m.at("baseNamespace").get<std::string>();
      state->manifest.schemaVersion = m.at("schemaVersion").get<std::string>();
      auto created = parse_timestamp(m.at("createdAt").get<std::string>());
      if (!created) throw Error(ErrorCode::kIntegrity, "bad createdAt");
      state->manifest.createdAt = *created;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kIntegrity, std::string("corrupt manifest: ") + e.what());
    }
    if (state->manifest.schemaVersion != kStoreSchemaVersion) {
      throw Error(ErrorCode::kIntegrity,
                  "unsupported store schema " + state->manifest.schemaVersion);
    }
  }

  auto snapshot = std::make_shared<Snapshot>();
  std::ifstream log(dir / kLogFile, std::ios::binary);
  std::string line;
  std::vector<std::shared_ptr<const NodeEnvelope>> pending;
  std::uintmax_t offset = 0;
  std::size_t line_no = 0;
  while (std::getline(log, line)) {
    ++line_no;
    if (log.eof()) break;  // no trailing newline: torn write
    offset += line.size() + 1;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      // Garbage in an uncommitted tail is a torn write; anything else is
      // corruption, detected when a later commit marker shows up.
      pending.push_back(nullptr);
      continue;
    }
    if (j.is_object() && j.contains("commit")) {
      if (!j["commit"].is_number_unsigned() || j["commit"].get<std::size_t>() != pending.size()) {
        throw Error(ErrorCode::kIntegrity,
                    "commit marker at line " + std::to_string(line_no) + " does not match its batch");
      }
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (!pending[i]) {
          throw Error(ErrorCode::kIntegrity,
                      "corrupt envelope log line in batch ending at line " +
                          std::to_string(line_no));
        }
      }
      for (auto& e : pending) snapshot->add(std::move(e));
      pending.clear();
      state->committed_log_bytes = offset;
      continue;
    }
    try {
      pending.push_back(std::make_shared<const NodeEnvelope>(envelope_from_json(j)));
    } catch (const Error&) {
      pending.push_back(nullptr);
    }
  }
  state->manifest.nodeCount = snapshot->size();
  state->current = std::move(snapshot);
  return GraphStore(std::move(state));
}

GraphStore GraphStore::open_or_create(const fs::path& dir, std::string base_namespace) {
  return exists(dir) ? open(dir) : create(dir, std::move(base_namespace));
}

StoreManifest GraphStore::manifest() const {
  std::lock_guard lock(state_->snapshot_mutex);
  return state_->manifest;
}

const std::string& GraphStore::base_namespace() const {
  return state_->manifest.baseNamespace;
}

std::shared_ptr<const Snapshot> GraphStore::snapshot() const {
  std::lock_guard lock(state_->snapshot_mutex);
  return state_->current;
}

NodeEnvelope GraphStore::seal(NodeRecord record) const {
  return linkflows::seal(std::move(record), state_->manifest.baseNamespace);
}

Iri GraphStore::put(const NodeEnvelope& envelope) {
  return put_batch({envelope}).ids.front();
}

PutResult GraphStore::put_batch(const std::vector<NodeEnvelope>& batch) {
  std::lock_guard write_lock(state_->write_mutex);
  const auto base = snapshot();

  PutResult result;
  std::vector<const NodeEnvelope*> fresh;
  std::unordered_map<Iri, const NodeEnvelope*> in_batch;
  OverlayView overlay(*base);

  for (const auto& e : batch) {
    if (!verify_envelope(e)) {
      throw Error(ErrorCode::kValidationFailed, "envelope hash does not match payload",
                  {{"hash-mismatch", "content hash or id does not match " + e.id.str()}});
    }
    result.ids.push_back(e.id);
    const NodeEnvelope* existing = base->envelope(e.id);
    if (!existing) {
      if (auto it = in_batch.find(e.id); it != in_batch.end()) existing = it->second;
    }
    if (existing) {
      if (existing->contentHash != e.contentHash) {
        throw Error(ErrorCode::kCollision, "IRI collision on " + e.id.str());
      }
      continue;
    }
    in_batch.emplace(e.id, &e);
    fresh.push_back(&e);
    overlay.add(e.payload);
  }

  for (const auto* e : fresh) {
    auto v = validate_record(e->payload, overlay);
    if (v.ok()) continue;
    const bool dangling = std::all_of(v.violations.begin(), v.violations.end(),
                                      [](const Violation& x) {
                                        return x.code.rfind("dangling-", 0) == 0;
                                      });
    std::string detail =
        "cannot store " + std::string(to_string(e->kind)) + ": " + v.violations.front().message;
    throw Error(dangling ? ErrorCode::kReferenceUnresolved : ErrorCode::kValidationFailed,
                std::move(detail), std::move(v.violations));
  }
  result.added = fresh.size();
  if (fresh.empty()) return result;

  if (state_->dir) {
    std::string bytes;
    for (const auto* e : fresh) bytes += envelope_to_json(*e).dump() + "\n";
    bytes += json{{"commit", fresh.size()}}.dump() + "\n";

    const int fd = ::open(state_->log_path().c_str(), O_WRONLY | O_CREAT, 0644);
    if (fd < 0) io_fail("cannot open " + state_->log_path().string());
    if (::ftruncate(fd, static_cast<off_t>(state_->committed_log_bytes)) != 0 ||
        ::lseek(fd, 0, SEEK_END) < 0) {
      ::close(fd);
      io_fail("cannot append to " + state_->log_path().string());
    }
    write_all(fd, bytes, state_->log_path().string());
    ::fsync(fd);
    ::close(fd);
    state_->committed_log_bytes += bytes.size();
  }

  auto next = std::make_shared<Snapshot>(*base);
  for (const auto* e : fresh) next->add(std::make_shared<const NodeEnvelope>(*e));
  StoreManifest manifest;
  {
    std::lock_guard lock(state_->snapshot_mutex);
    state_->manifest.nodeCount = next->size();
    manifest = state_->manifest;
    state_->current = std::move(next);
  }
  if (state_->dir) write_manifest(*state_->dir, manifest);
  return result;
}

NodeEnvelope GraphStore::get(const Iri& id) const {
  const auto snap = snapshot();
  const auto* e = snap->envelope(id);
  if (!e) throw Error(ErrorCode::kNotFound, "no node " + id.str());
  if (!verify_envelope(*e)) {
    throw Error(ErrorCode::kIntegrity, "stored payload of " + id.str() +
                                           " does not match its content hash");
  }
  return *e;
}

std::vector<NodeEnvelope> GraphStore::query(const QueryFilter& filter) const {
  return snapshot()->query(filter);
}

std::vector<Violation> GraphStore::check_integrity() const {
  const auto snap = snapshot();
  std::vector<Violation> problems;
  for (const auto& e : snap->envelopes()) {
    if (!verify_envelope(*e)) {
      problems.push_back({"hash-mismatch", "content hash mismatch on " + e->id.str()});
    }
    for (auto& v : validate_record(e->payload, *snap).violations) {
      v.message = e->id.str() + ": " + v.message;
      problems.push_back(std::move(v));
    }
  }
  return problems;
}

}  // namespace linkflows
