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

#include "linkflows/ingest.hpp"

#include <algorithm>
#include <cctype>

#include "linkflows/sha256.hpp"

namespace linkflows {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      lines.push_back(std::move(current));
      current.clear();
    } else if (c == '\n') {
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

std::string normalize_line(std::string_view line) {
  std::string out;
  bool pending_space = false;
  for (char c : line) {
    if (c == ' ' || c == '\t') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

bool is_heading(std::string_view raw_line) { return !raw_line.empty() && raw_line[0] == '#'; }

std::string heading_title(std::string_view raw_line) {
  std::size_t i = 0;
  while (i < raw_line.size() && raw_line[i] == '#') ++i;
  auto title = normalize_line(raw_line.substr(i));
  return title.empty() ? normalize_line(raw_line) : title;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Blank-line separated blocks; heading lines become their own block when
// `keep_headings`, otherwise they only separate blocks.
std::vector<std::string> blocks_of(std::string_view text, bool keep_headings) {
  std::vector<std::string> blocks;
  std::vector<std::string> current;
  auto flush = [&] {
    if (!current.empty()) blocks.push_back(join(current, "\n"));
    current.clear();
  };
  for (const auto& raw : split_lines(text)) {
    if (is_heading(raw)) {
      flush();
      if (keep_headings) blocks.push_back(normalize_line(raw));
      continue;
    }
    auto line = normalize_line(raw);
    if (line.empty()) {
      flush();
    } else {
      current.push_back(std::move(line));
    }
  }
  flush();
  return blocks;
}

bool is_list_marker(std::string_view line) {
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*' || line[0] == '+') &&
      line[1] == ' ') {
    return true;
  }
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  return i > 0 && i + 1 < line.size() && line[i] == '.' && line[i + 1] == ' ';
}

}  // namespace

std::vector<NodeEnvelope> SegmentationResult::all() const {
  std::vector<NodeEnvelope> out{root};
  out.insert(out.end(), sections.begin(), sections.end());
  out.insert(out.end(), paragraphs.begin(), paragraphs.end());
  return out;
}

std::string normalized_body(std::string_view text) { return join(blocks_of(text, false), "\n\n"); }

SegmentationResult segment_article(std::string_view text, std::string_view base_namespace,
                                   Timestamp created_at) {
  const auto document = join(blocks_of(text, true), "\n\n");
  if (document.empty()) throw Error(ErrorCode::kEmptyInput, "article text is empty");

  SegmentationResult result;
  SnippetNode root;
  root.level = GranularityLevel::article;
  root.text = document;
  root.createdAt = created_at;
  result.root = seal(root, base_namespace);

  std::uint32_t article_children = 0;
  std::uint32_t section_children = 0;
  std::optional<Iri> section;
  std::vector<std::string> block;
  std::vector<std::string> paragraph_texts;

  auto flush = [&] {
    if (block.empty()) return;
    SnippetNode p;
    p.level = GranularityLevel::paragraph;
    p.text = join(block, "\n");
    p.createdAt = created_at;
    if (section) {
      p.parent = *section;
      p.order = section_children++;
    } else {
      p.parent = result.root.id;
      p.order = article_children++;
    }
    paragraph_texts.push_back(p.text);
    result.paragraphs.push_back(seal(std::move(p), base_namespace));
    block.clear();
  };

  for (const auto& raw : split_lines(text)) {
    if (is_heading(raw)) {
      flush();
      SnippetNode s;
      s.level = GranularityLevel::section;
      s.text = heading_title(raw);
      s.parent = result.root.id;
      s.order = article_children++;
      s.createdAt = created_at;
      result.sections.push_back(seal(std::move(s), base_namespace));
      section = result.sections.back().id;
      section_children = 0;
      continue;
    }
    auto line = normalize_line(raw);
    if (line.empty()) {
      flush();
    } else {
      block.push_back(std::move(line));
    }
  }
  flush();

  result.reconstructionChecksum = sha256_hex(join(paragraph_texts, "\n\n"));
  return result;
}

std::string normalized_review(std::string_view text) {
  std::vector<std::string> lines;
  for (const auto& raw : split_lines(text)) {
    auto line = normalize_line(raw);
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return join(lines, "\n");
}

std::vector<ReviewSnippet> split_review(std::string_view text) {
  std::vector<ReviewSnippet> out;
  std::vector<std::string> current;
  std::size_t start = 0, end = 0;
  auto flush = [&] {
    if (current.empty()) return;
    ReviewSnippet s;
    s.text = join(current, "\n");
    s.index = out.size();
    s.startLine = start;
    s.endLine = end;
    s.suggestedTarget = suggest_target(s.text);
    out.push_back(std::move(s));
    current.clear();
  };

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = normalize_line(lines[i]);
    if (line.empty()) {
      flush();
      continue;
    }
    if (is_list_marker(line)) flush();
    if (current.empty()) start = i + 1;
    end = i + 1;
    current.push_back(std::move(line));
  }
  flush();
  if (out.empty()) throw Error(ErrorCode::kEmptyInput, "review text is empty");
  return out;
}

std::optional<SuggestedTarget> suggest_target(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  struct Keyword {
    std::string_view word;
    GranularityLevel level;
  };
  static constexpr Keyword kKeywords[] = {
      {"section", GranularityLevel::section},
      {"paragraph", GranularityLevel::paragraph},
      {"figure", GranularityLevel::paragraph},
      {"table", GranularityLevel::paragraph},
  };

  std::optional<std::pair<std::size_t, Keyword>> best;
  for (const auto& kw : kKeywords) {
    for (auto pos = lower.find(kw.word); pos != std::string::npos;
         pos = lower.find(kw.word, pos + 1)) {
      const bool word_start =
          pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
      auto after = pos + kw.word.size();
      if (after < lower.size() && lower[after] == 's') ++after;  // plural
      const bool word_end =
          after >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[after]));
      if (!word_start || !word_end) continue;
      if (!best || pos < best->first) best = {pos, kw};
      break;
    }
  }
  if (!best) return std::nullopt;

  // Keyword plus the following token, e.g. "section 3.2".
  auto [pos, kw] = *best;
  auto end = pos + kw.word.size();
  while (end < lower.size() && std::isalpha(static_cast<unsigned char>(lower[end]))) ++end;
  auto hint_end = end;
  if (hint_end < lower.size() && lower[hint_end] == ' ') {
    auto t = hint_end + 1;
    while (t < lower.size() && (std::isalnum(static_cast<unsigned char>(lower[t])) ||
                                lower[t] == '.')) {
      ++t;
    }
    while (t > hint_end + 1 && lower[t - 1] == '.') --t;
    if (t > hint_end + 1 && std::isdigit(static_cast<unsigned char>(lower[hint_end + 1]))) {
      hint_end = t;
    }
  }
  return SuggestedTarget{kw.level, std::string(text.substr(pos, hint_end - pos))};
}

std::vector<std::string> sample_smallest_hash(std::vector<std::string> items, std::size_t k) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (k > items.size()) {
    throw Error(ErrorCode::kTooLarge, "k=" + std::to_string(k) + " exceeds " +
                                          std::to_string(items.size()) + " distinct items");
  }
  std::vector<std::pair<std::string, std::string>> keyed;
  keyed.reserve(items.size());
  for (auto& item : items) keyed.emplace_back(sha256_hex(item), std::move(item));
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end());
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::move(keyed[i].second));
  return out;
}

}  // namespace linkflows
