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

// Turning plain text into snippet trees and single-point review snippets,
// plus deterministic smallest-SHA-256 sampling.
//
// Whitespace normalization used throughout: CRLF/CR become LF, runs of
// spaces and tabs collapse to one space, lines are trimmed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linkflows/canonical.hpp"
#include "linkflows/model.hpp"

namespace linkflows {

struct SegmentationResult {
  NodeEnvelope root;
  std::vector<NodeEnvelope> sections;
  std::vector<NodeEnvelope> paragraphs;
  // SHA-256 of the paragraph texts joined by a blank line.
  std::string reconstructionChecksum;

  // Parents before children: root, sections, paragraphs.
  std::vector<NodeEnvelope> all() const;
};

// Article body with heading lines removed, normalized, blocks joined by
// "\n\n". The paragraphs of segment_article reproduce exactly this text.
std::string normalized_body(std::string_view text);

// Headings are lines starting with '#'; every heading opens a section
// parented to the article. Blank-line separated blocks become paragraphs of
// the current section (or of the article before the first heading). The
// article node's text is the whole normalized document.
// Throws kEmptyInput when no heading or paragraph is present.
SegmentationResult segment_article(std::string_view text, std::string_view base_namespace,
                                   Timestamp created_at);

struct SuggestedTarget {
  GranularityLevel level;
  std::string hint;

  bool operator==(const SuggestedTarget&) const = default;
};

struct ReviewSnippet {
  std::string text;
  std::size_t index = 0;
  std::size_t startLine = 0;  // 1-based, inclusive
  std::size_t endLine = 0;
  std::optional<SuggestedTarget> suggestedTarget;
};

// Review text with blank lines dropped and each line normalized, joined by
// "\n". The snippets of split_review joined by "\n" reproduce this text.
std::string normalized_review(std::string_view text);

// Splits on blank lines and at list-item markers ("-", "*", "+" or "N."
// followed by a space at line start). Throws kEmptyInput on blank input.
std::vector<ReviewSnippet> split_review(std::string_view text);

// Keyword heuristic: "section", "paragraph", "figure", "table" mentions.
std::optional<SuggestedTarget> suggest_target(std::string_view text);

// Deduplicates, hashes each item's exact bytes with SHA-256 and returns the
// k items with the lexicographically smallest hex digests, ordered by
// digest. Throws kTooLarge when k exceeds the number of distinct items.
std::vector<std::string> sample_smallest_hash(std::vector<std::string> items, std::size_t k);

}  // namespace linkflows
