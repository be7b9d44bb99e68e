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

#include <doctest.h>

#include <fstream>
#include <set>
#include <thread>

#include "../support/fixtures.hpp"
#include "linkflows/envelope_json.hpp"
#include "linkflows/store.hpp"

using namespace linkflows;
using linkflows::testing::fixed_time;
using linkflows::testing::kBase;
using linkflows::testing::random_nodes;
using linkflows::testing::TempDir;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

// Independent restatement of the query contract.
bool oracle_match(const NodeEnvelope& e, const QueryFilter& f,
                  const std::map<Iri, NodeEnvelope>& all) {
  const auto& n = e.payload;
  if (f.kind && e.kind != *f.kind) return false;
  std::optional<Iri> target, author;
  std::optional<GranularityLevel> level;
  if (auto* s = std::get_if<SnippetNode>(&n)) {
    target = s->parent;
    level = s->level;
  } else if (auto* c = std::get_if<ReviewComment>(&n)) {
    target = c->refersTo;
    author = c->author;
    auto t = all.find(c->refersTo);
    if (t != all.end()) level = std::get<SnippetNode>(t->second.payload).level;
    if (f.aspect && c->aspect != f.aspect) return false;
    if (f.polarity && c->polarity != f.polarity) return false;
    if (f.actionNeeded && c->actionNeeded != f.actionNeeded) return false;
    if (f.impact && (!c->impact || c->impact->value() != *f.impact)) return false;
  } else if (auto* r = std::get_if<ResponseComment>(&n)) {
    target = r->isResponseTo;
    author = r->author;
  } else if (auto* k = std::get_if<ActionCheckComment>(&n)) {
    target = k->isResponseTo;
    author = k->author;
  }
  const auto* c = std::get_if<ReviewComment>(&n);
  if (!c && (f.aspect || f.polarity || f.actionNeeded || f.impact)) return false;
  const auto* r = std::get_if<ResponseComment>(&n);
  if (f.agreement && (!r || r->agreement != *f.agreement)) return false;
  const auto* k = std::get_if<ActionCheckComment>(&n);
  if (f.status && (!k || k->status != *f.status)) return false;
  if (f.target && target != f.target) return false;
  if (f.author && author != f.author) return false;
  if (f.level && level != f.level) return false;
  return true;
}

}  // namespace

TEST_CASE("store: put and get are identities, and survive reopening") {
  TempDir dir;
  std::mt19937_64 rng(1);
  const auto nodes = random_nodes(rng, 120);
  {
    auto store = GraphStore::create(dir / "s", std::string(kBase));
    const auto r = store.put_batch(nodes);
    CHECK(r.added == nodes.size());
    for (const auto& e : nodes) CHECK(store.get(e.id) == e);
    CHECK(store.manifest().nodeCount == nodes.size());
  }
  auto store = GraphStore::open(dir / "s");
  CHECK(store.base_namespace() == kBase);
  CHECK(store.manifest().nodeCount == nodes.size());
  const auto snap = store.snapshot();
  REQUIRE(snap->size() == nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    CHECK(*snap->envelopes()[i] == nodes[i]);
    CHECK(store.get(nodes[i].id) == nodes[i]);
    CHECK(snap->envelope_by_suffix(nodes[i].id.last_segment()) != nullptr);
  }
  CHECK(store.check_integrity().empty());
}

TEST_CASE("store: re-putting identical content is a no-op") {
  auto store = GraphStore::in_memory(std::string(kBase));
  SnippetNode a;
  a.level = GranularityLevel::article;
  a.text = "Article";
  a.createdAt = fixed_time(1);
  const auto first = store.seal(a);
  CHECK(store.put_batch({first}).added == 1);
  a.createdAt = fixed_time(50);  // not part of the identity
  const auto again = store.seal(a);
  CHECK(again.id == first.id);
  const auto r = store.put_batch({again});
  CHECK(r.added == 0);
  CHECK(r.ids.front() == first.id);
  CHECK(store.snapshot()->size() == 1);
  CHECK(created_at(store.get(first.id).payload) == fixed_time(1));
}

TEST_CASE("store: batches are all-or-nothing") {
  TempDir dir;
  auto store = GraphStore::create(dir / "s", std::string(kBase));
  SnippetNode a;
  a.level = GranularityLevel::article;
  a.text = "Article";
  const auto art = store.seal(a);
  SnippetNode p;
  p.level = GranularityLevel::paragraph;
  p.text = "Para";
  p.parent = art.id;
  const auto para = store.seal(p);

  ReviewComment bad;
  bad.refersTo = para.id;
  bad.text = "Missing impact";
  bad.author = Iri::parse("http://ex.org/people/r");
  bad.aspect = Aspect::style;
  bad.polarity = Polarity::neutral;
  bad.actionNeeded = ActionNeeded::suggestion;
  const auto bad_env = store.seal(bad);

  try {
    store.put_batch({art, para, bad_env});
    FAIL("expected validation failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kValidationFailed);
    REQUIRE(e.violations().size() == 1);
    CHECK(e.violations()[0].code == "impact-required");
  }
  CHECK(store.snapshot()->size() == 0);
  CHECK(GraphStore::open(dir / "s").snapshot()->size() == 0);

  // Parent and child in one batch resolve against each other.
  CHECK(store.put_batch({art, para}).added == 2);

  ReviewComment dangling = bad;
  dangling.impact = ImpactScore(2);
  dangling.refersTo = Iri::parse("http://ex.org/n/snippet/ffffffffffffffff");
  CHECK(code_of([&] { store.put(store.seal(dangling)); }) == ErrorCode::kReferenceUnresolved);

  auto forged = para;
  std::get<SnippetNode>(forged.payload).text = "Forged";
  CHECK(code_of([&] { store.put(forged); }) == ErrorCode::kValidationFailed);
  CHECK(code_of([&] { (void)store.get(Iri::parse("http://ex.org/n/snippet/0")); }) == ErrorCode::kNotFound);
}

TEST_CASE("store: torn writes are discarded and truncated") {
  TempDir dir;
  std::mt19937_64 rng(7);
  const auto nodes = random_nodes(rng, 30);
  const auto half = nodes.size() / 2;
  {
    auto store = GraphStore::create(dir / "s", std::string(kBase));
    store.put_batch({nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(half)});
  }
  const auto log = dir / "s" / "envelopes.jsonl";
  const auto committed = slurp(log);
  // An uncommitted envelope line followed by half a line.
  spit(log, committed + envelope_to_json(nodes[half]).dump() + "\n{\"id\":\"http://ex.o");

  {
    auto store = GraphStore::open(dir / "s");
    CHECK(store.snapshot()->size() == half);
    store.put_batch({nodes.begin() + static_cast<std::ptrdiff_t>(half), nodes.end()});
  }
  const auto after = slurp(log);
  CHECK(after.rfind(committed, 0) == 0);
  CHECK(after.find("http://ex.o\"") == std::string::npos);
  CHECK(after.back() == '\n');
  auto reopened = GraphStore::open(dir / "s");
  CHECK(reopened.snapshot()->size() == nodes.size());
  CHECK(reopened.check_integrity().empty());
}

TEST_CASE("store: corruption is detected") {
  TempDir dir;
  std::mt19937_64 rng(9);
  const auto nodes = random_nodes(rng, 10);
  GraphStore::create(dir / "s", std::string(kBase)).put_batch(nodes);
  const auto log = dir / "s" / "envelopes.jsonl";
  const auto original = slurp(log);

  SUBCASE("edited payload fails verification on read") {
    auto j = envelope_to_json(nodes.back());
    auto text = j["payload"].contains("text") ? "text" : "displayName";
    j["payload"][text] = "tampered";
    auto edited = original;
    const auto line = envelope_to_json(nodes.back()).dump();
    edited.replace(edited.find(line), line.size(), j.dump());
    spit(log, edited);
    auto store = GraphStore::open(dir / "s");
    CHECK(code_of([&] { (void)store.get(nodes.back().id); }) == ErrorCode::kIntegrity);
    const auto problems = store.check_integrity();
    REQUIRE_FALSE(problems.empty());
    CHECK(problems.front().code == "hash-mismatch");
  }
  SUBCASE("garbage inside a committed batch") {
    auto broken = original;
    broken.replace(0, 5, "#####");
    spit(log, broken);
    CHECK(code_of([&] { GraphStore::open(dir / "s"); }) == ErrorCode::kIntegrity);
  }
  SUBCASE("commit marker that does not match its batch") {
    auto broken = original;
    const auto marker = "{\"commit\":" + std::to_string(nodes.size()) + "}";
    broken.replace(broken.find(marker), marker.size(), "{\"commit\":1}");
    spit(log, broken);
    CHECK(code_of([&] { GraphStore::open(dir / "s"); }) == ErrorCode::kIntegrity);
  }
  SUBCASE("missing and duplicate stores") {
    CHECK(code_of([&] { GraphStore::open(dir / "nothing"); }) == ErrorCode::kNotFound);
    CHECK(code_of([&] { GraphStore::create(dir / "s", "http://x/"); }) == ErrorCode::kIo);
  }
}

TEST_CASE("store: query agrees with a linear-scan oracle") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    auto store = GraphStore::in_memory(std::string(kBase));
    const auto nodes = random_nodes(rng, 80);
    store.put_batch(nodes);
    std::map<Iri, NodeEnvelope> by_id;
    for (const auto& e : nodes) by_id.emplace(e.id, e);

    for (int q = 0; q < 40; ++q) {
      QueryFilter f;
      auto coin = [&] { return linkflows::testing::pick(rng, 3) == 0; };
      if (coin()) f.kind = static_cast<NodeKind>(linkflows::testing::pick(rng, 5));
      if (coin()) f.level = static_cast<GranularityLevel>(linkflows::testing::pick(rng, 3));
      if (coin()) f.aspect = static_cast<Aspect>(linkflows::testing::pick(rng, 3));
      if (coin()) f.polarity = static_cast<Polarity>(linkflows::testing::pick(rng, 3));
      if (coin()) f.actionNeeded = static_cast<ActionNeeded>(linkflows::testing::pick(rng, 3));
      if (coin()) f.impact = static_cast<int>(1 + linkflows::testing::pick(rng, 5));
      if (coin()) f.agreement = static_cast<Agreement>(linkflows::testing::pick(rng, 3));
      if (coin()) f.status = static_cast<CheckStatus>(linkflows::testing::pick(rng, 3));
      if (coin()) f.target = nodes[linkflows::testing::pick(rng, nodes.size())].id;
      if (coin()) f.author = nodes[linkflows::testing::pick(rng, nodes.size())].id;

      std::vector<NodeEnvelope> expected;
      for (const auto& e : nodes) {
        if (oracle_match(e, f, by_id)) expected.push_back(e);
      }
      std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        return std::pair(created_at(a.payload), a.id) < std::pair(created_at(b.payload), b.id);
      });
      CHECK(store.query(f) == expected);
    }
  }
}

TEST_CASE("store: readers see consistent snapshots during writes") {
  TempDir dir;
  auto store = GraphStore::create(dir / "s", std::string(kBase));
  std::mt19937_64 rng(5);
  std::vector<std::vector<NodeEnvelope>> batches;
  for (int i = 0; i < 15; ++i) {
    std::mt19937_64 local(100 + i);
    batches.push_back(random_nodes(local, 20, "http://ex.org/b" + std::to_string(i) + "/"));
  }

  std::atomic<bool> done{false};
  std::atomic<int> inconsistencies{0};
  std::vector<std::thread> readers;
  for (int r = 0; r < 4; ++r) {
    readers.emplace_back([&] {
      std::size_t last = 0;
      while (!done) {
        const auto snap = store.snapshot();
        if (snap->size() < last) ++inconsistencies;
        last = snap->size();
        for (const auto& e : snap->envelopes()) {
          if (!validate_record(e->payload, *snap).ok()) ++inconsistencies;
        }
      }
    });
  }
  for (const auto& b : batches) store.put_batch(b);
  done = true;
  for (auto& t : readers) t.join();
  CHECK(inconsistencies == 0);
  std::size_t total = 0;
  for (const auto& b : batches) total += b.size();
  CHECK(GraphStore::open(dir / "s").snapshot()->size() == total);
}
