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

// Annotation tables: one record per row, tab separated.
//
//   rater <TAB> group <TAB> item <TAB> dimension <TAB> answer
//
// `group` is reviewer, modelExperts, peers or tool. `answer` is a category
// of the dimension or cannotAnswer:moreContextNeeded / cannotAnswer:confusing.
// Fields escape backslash, tab, LF and CR as \\ \t \n \r, and a leading '#'
// as \#. Lines starting with '#' and blank lines are ignored; a first line
// starting with "rater<TAB>" is a header.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkflows/analytics.hpp"

namespace linkflows::analytics {

// Throws ParseError on malformed rows, Error(kUnknownDimension) on unknown
// dimensions.
std::vector<AnnotationRecord> read_annotations(std::istream& in);
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);
void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records);

// "peers" selects a whole group, "tool/socal" a single rater of a group.
struct GroupSelector {
  RaterGroup group = RaterGroup::peers;
  std::optional<std::string> rater;

  std::string str() const;
  bool matches(const AnnotationRecord& r) const;
};

// Throws Error(kInvalidArgument).
GroupSelector parse_group_selector(std::string_view text);

struct Selection {
  GroupResponses responses;   // item -> substantive answers
  RaterResponses perRater;    // rater -> item -> answer
  std::size_t records = 0;    // matching records, answered or not
  std::size_t excludedCannotAnswer = 0;
};

Selection select(const std::vector<AnnotationRecord>& records, const GroupSelector& selector,
                 DimensionName dimension);

struct KappaInput {
  std::vector<std::vector<int>> counts;
  std::vector<std::string> items;  // row order
  std::size_t nRatersPerItem = 0;
  std::size_t itemsDropped = 0;    // items with a different number of ratings
  std::size_t excludedCannotAnswer = 0;
};

// Category counts per item. The rater count per item is the most common one
// (larger on ties); items rated by a different number of raters are dropped.
KappaInput kappa_input(const std::vector<AnnotationRecord>& records,
                       const GroupSelector& selector, DimensionName dimension);

}  // namespace linkflows::analytics
