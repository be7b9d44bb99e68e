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

#include "linkflows/annotations.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace linkflows::analytics {

namespace {

constexpr std::string_view kCannotAnswerPrefix = "cannotAnswer:";

std::string unescape(std::string_view field, std::size_t line, std::size_t column) {
  std::string out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (++i == field.size()) throw ParseError("dangling escape", line, column + i);
    switch (field[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case '#': out += '#'; break;
      default: throw ParseError("unknown escape '\\" + std::string(1, field[i]) + "'", line, column + i);
    }
  }
  return out;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string answer_text(const AnnotationRecord& r) {
  if (const auto* s = std::get_if<std::string>(&r.answer)) return *s;
  return std::string(kCannotAnswerPrefix) + std::string(to_string(std::get<CannotAnswer>(r.answer)));
}

}  // namespace

std::vector<AnnotationRecord> read_annotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("rater\t", 0) == 0) continue;

    std::vector<std::string> fields;
    std::vector<std::size_t> columns;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      const auto end = tab == std::string::npos ? line.size() : tab;
      columns.push_back(start + 1);
      fields.push_back(unescape(std::string_view(line).substr(start, end - start), line_no, start + 1));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 5) {
      throw ParseError("expected 5 tab-separated fields, got " + std::to_string(fields.size()),
                       line_no, 1);
    }

    AnnotationRecord r;
    r.rater = fields[0];
    if (r.rater.empty()) throw ParseError("empty rater", line_no, columns[0]);
    auto group = parse_rater_group(fields[1]);
    if (!group) throw ParseError("unknown group '" + fields[1] + "'", line_no, columns[1]);
    r.group = *group;
    r.item = fields[2];
    if (r.item.empty()) throw ParseError("empty item", line_no, columns[2]);
    r.dimension = parse_dimension(fields[3]);

    const auto& answer = fields[4];
    if (answer.rfind(kCannotAnswerPrefix, 0) == 0) {
      auto reason = parse_cannot_answer(std::string_view(answer).substr(kCannotAnswerPrefix.size()));
      if (!reason) throw ParseError("unknown cannotAnswer reason '" + answer + "'", line_no, columns[4]);
      r.answer = *reason;
    } else {
      if (!dimension(r.dimension).index_of(answer)) {
        throw ParseError("'" + answer + "' is not a category of " + fields[3], line_no, columns[4]);
      }
      r.answer = answer;
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read annotations from " + path.string());
  return read_annotations(in);
}

void write_annotations(std::ostream& out, const std::vector<AnnotationRecord>& records) {
  out << "rater\tgroup\titem\tdimension\tanswer\n";
  for (const auto& r : records) {
    // A leading '#' would read back as a comment line.
    const auto rater = escape(r.rater);
    out << (rater.starts_with('#') ? "\\" : "") << rater << '\t' << to_string(r.group) << '\t' << escape(r.item) << '\t'
        << to_string(r.dimension) << '\t' << escape(answer_text(r)) << '\n';
  }
}

std::string GroupSelector::str() const {
  std::string s(to_string(group));
  if (rater) s += "/" + *rater;
  return s;
}

bool GroupSelector::matches(const AnnotationRecord& r) const {
  return r.group == group && (!rater || r.rater == *rater);
}

GroupSelector parse_group_selector(std::string_view text) {
  GroupSelector sel;
  const auto slash = text.find('/');
  const auto group_text = text.substr(0, slash);
  auto group = parse_rater_group(group_text);
  if (!group) {
    throw Error(ErrorCode::kInvalidArgument, "unknown group '" + std::string(group_text) +
                                                 "' (expected reviewer, modelExperts, peers or tool)");
  }
  sel.group = *group;
  if (slash != std::string_view::npos) {
    auto rater = text.substr(slash + 1);
    if (rater.empty()) throw Error(ErrorCode::kInvalidArgument, "empty rater in '" + std::string(text) + "'");
    sel.rater = std::string(rater);
  }
  return sel;
}

Selection select(const std::vector<AnnotationRecord>& records, const GroupSelector& selector,
                 DimensionName dim) {
  Selection out;
  for (const auto& r : records) {
    if (r.dimension != dim || !selector.matches(r)) continue;
    ++out.records;
    const auto* answer = std::get_if<std::string>(&r.answer);
    if (!answer) {
      ++out.excludedCannotAnswer;
      continue;
    }
    out.responses[r.item].push_back(*answer);
    out.perRater[r.rater][r.item] = *answer;
  }
  return out;
}

KappaInput kappa_input(const std::vector<AnnotationRecord>& records,
                       const GroupSelector& selector, DimensionName dim) {
  const auto sel = select(records, selector, dim);
  const Dimension& d = dimension(dim);
  KappaInput out;
  out.excludedCannotAnswer = sel.excludedCannotAnswer;

  std::map<std::size_t, std::size_t> frequency;
  for (const auto& [item, answers] : sel.responses) ++frequency[answers.size()];
  std::size_t best = 0;
  for (const auto& [n, f] : frequency) {
    if (f >= best) {
      best = f;
      out.nRatersPerItem = n;
    }
  }
  for (const auto& [item, answers] : sel.responses) {
    if (answers.size() != out.nRatersPerItem) {
      ++out.itemsDropped;
      continue;
    }
    std::vector<int> row(d.size(), 0);
    for (const auto& a : answers) ++row[*d.index_of(a)];
    out.counts.push_back(std::move(row));
    out.items.push_back(item);
  }
  return out;
}

}  // namespace linkflows::analytics
