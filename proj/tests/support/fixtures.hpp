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

// Test helpers: scratch directories and random, valid node sets.

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "linkflows/canonical.hpp"
#include "linkflows/model.hpp"
#include "linkflows/store.hpp"

namespace linkflows::testing {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("linkflows-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline constexpr std::string_view kBase = "http://ex.org/n/";

inline Timestamp fixed_time(int offset_seconds = 0) {
  return Timestamp{std::chrono::seconds{1700000000 + offset_seconds}};
}

template <typename Rng>
std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Non-blank text with characters that stress escaping.
template <typename Rng>
std::string random_text(Rng& rng) {
  static const std::vector<std::string> kPieces{
      "clarify", "the", "section", "results", "\"quoted\"", "back\\slash", "line\nbreak",
      "tab\there", "caf\xC3\xA9", "\xE6\x97\xA5\xE6\x9C\xAC", "\"\"\"", "'", "<iri-like>",
      "#hash", "@at", "50%", "a.b", "  spaced  "};
  std::string out = "t" + std::to_string(pick(rng, 1000000));
  const auto n = 1 + pick(rng, 6);
  for (std::size_t i = 0; i < n; ++i) out += " " + kPieces[pick(rng, kPieces.size())];
  return out;
}

// Random valid store contents in insertion order (parents first), at most
// `max_nodes` envelopes.
template <typename Rng>
std::vector<NodeEnvelope> random_nodes(Rng& rng, std::size_t max_nodes,
                                       std::string_view base = kBase) {
  std::vector<NodeEnvelope> out;
  auto room = [&] { return out.size() < max_nodes; };
  auto add = [&](NodeRecord r) {
    if (!room()) return false;
    auto env = seal(std::move(r), base);
    for (const auto& e : out) {
      if (e.id == env.id) return false;
    }
    out.push_back(std::move(env));
    return true;
  };
  int clock = 0;

  std::vector<Iri> agents, sections, paragraphs, snippets, comments, replyable;
  for (std::size_t i = 0, n = 1 + pick(rng, 4); i < n; ++i) {
    Agent a;
    a.displayName = "agent " + std::to_string(pick(rng, 100000));
    a.role = static_cast<AgentRole>(pick(rng, 6));
    if (add(a)) agents.push_back(out.back().id);
  }
  SnippetNode article;
  article.level = GranularityLevel::article;
  article.text = random_text(rng);
  article.createdAt = fixed_time(clock++);
  if (!add(article)) return out;
  const Iri root = out.back().id;
  snippets.push_back(root);

  for (std::size_t i = 0, n = pick(rng, 5); i < n && room(); ++i) {
    SnippetNode s;
    s.level = GranularityLevel::section;
    s.text = random_text(rng);
    s.parent = root;
    s.order = static_cast<std::uint32_t>(i);
    s.createdAt = fixed_time(clock++);
    if (pick(rng, 4) == 0) s.subtype = "appendix";
    if (add(s)) {
      sections.push_back(out.back().id);
      snippets.push_back(out.back().id);
    }
  }
  for (std::size_t i = 0, n = pick(rng, 20); i < n && room(); ++i) {
    SnippetNode p;
    p.level = GranularityLevel::paragraph;
    p.text = random_text(rng);
    p.parent = sections.empty() || pick(rng, 3) == 0 ? root : sections[pick(rng, sections.size())];
    p.order = static_cast<std::uint32_t>(i);
    p.createdAt = fixed_time(clock++);
    if (!paragraphs.empty() && pick(rng, 6) == 0) p.previousVersion = paragraphs[pick(rng, paragraphs.size())];
    if (pick(rng, 5) == 0) p.subtype = pick(rng, 2) ? "figure" : "table";
    if (add(p)) {
      paragraphs.push_back(out.back().id);
      snippets.push_back(out.back().id);
    }
  }
  while (room()) {
    const auto choice = pick(rng, 10);
    if (choice < 5 || replyable.empty()) {
      ReviewComment c;
      c.refersTo = snippets[pick(rng, snippets.size())];
      c.text = random_text(rng);
      c.author = agents.empty() ? Iri::parse("http://ex.org/people/x") : agents[pick(rng, agents.size())];
      c.aspect = static_cast<Aspect>(pick(rng, 3));
      c.polarity = static_cast<Polarity>(pick(rng, 3));
      c.actionNeeded = static_cast<ActionNeeded>(pick(rng, 3));
      c.impact = ImpactScore(static_cast<int>(1 + pick(rng, 5)));
      if (!comments.empty() && pick(rng, 8) == 0) c.previousVersion = comments[pick(rng, comments.size())];
      c.createdAt = fixed_time(clock++);
      if (add(c)) {
        comments.push_back(out.back().id);
        replyable.push_back(out.back().id);
      }
    } else if (choice < 8) {
      ResponseComment r;
      r.isResponseTo = replyable[pick(rng, replyable.size())];
      r.author = agents.empty() ? Iri::parse("http://ex.org/people/y") : agents[pick(rng, agents.size())];
      r.text = random_text(rng);
      r.agreement = static_cast<Agreement>(pick(rng, 3));
      r.createdAt = fixed_time(clock++);
      if (add(r)) replyable.push_back(out.back().id);
    } else {
      ActionCheckComment c;
      c.isResponseTo = replyable[pick(rng, replyable.size())];
      c.author = agents.empty() ? Iri::parse("http://ex.org/people/z") : agents[pick(rng, agents.size())];
      c.text = random_text(rng);
      c.status = static_cast<CheckStatus>(pick(rng, 3));
      c.createdAt = fixed_time(clock++);
      add(c);
    }
    if (out.size() >= max_nodes) break;
  }
  return out;
}

// Simple StoreView over a vector, with no validation at all.
class VectorView final : public StoreView {
 public:
  explicit VectorView(std::vector<NodeRecord> records) : records_(std::move(records)) {}
  const NodeRecord* find(const Iri& id) const override {
    for (const auto& r : records_) {
      if (id_of(r) == id) return &r;
    }
    return nullptr;
  }
  std::vector<const NodeRecord*> all() const override {
    std::vector<const NodeRecord*> out;
    for (const auto& r : records_) out.push_back(&r);
    return out;
  }

 private:
  std::vector<NodeRecord> records_;
};

}  // namespace linkflows::testing
