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

#include "linkflows/sentiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

namespace linkflows::sentiment {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not a number: '" + std::string(s) + "'", line, 1);
  }
  return v;
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

void Lexicon::validate() const {
  for (const auto& [term, v] : entries) {
    if (!(v >= -5.0 && v <= 5.0)) {
      throw Error(ErrorCode::kInvalidArgument, "valence of '" + term + "' outside [-5, 5]");
    }
  }
  for (const auto& [term, m] : intensifiers) {
    if (!(m > 0)) throw Error(ErrorCode::kInvalidArgument, "multiplier of '" + term + "' must be > 0");
  }
  if (!(negationShift >= 0)) throw Error(ErrorCode::kInvalidArgument, "negationShift must be >= 0");
}

Lexicon read_lexicon(std::istream& in) {
  enum class Section { entries, intensifiers, negators, settings } section = Section::entries;
  Lexicon lex;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[intensifiers]") { section = Section::intensifiers; continue; }
    if (line == "[negators]") { section = Section::negators; continue; }
    if (line == "[settings]") { section = Section::settings; continue; }
    if (line.front() == '[') throw ParseError("unknown section " + std::string(line), line_no, 1);

    const auto tab = line.find('\t');
    const auto term = std::string(trim(line.substr(0, tab)));
    if (section != Section::settings && tokenize(term) != std::vector<std::string>{term}) {
      throw ParseError("'" + term + "' is not a single lowercase token", line_no, 1);
    }
    if (section == Section::negators) {
      if (tab != std::string_view::npos) throw ParseError("negators take no value", line_no, tab + 1);
      lex.negators.insert(term);
      continue;
    }
    if (tab == std::string_view::npos) throw ParseError("expected term<TAB>value", line_no, 1);
    const double value = parse_number(line.substr(tab + 1), line_no);
    switch (section) {
      case Section::entries:
        if (value < -5 || value > 5) throw ParseError("valence outside [-5, 5]", line_no, tab + 2);
        lex.entries[term] = value;
        break;
      case Section::intensifiers:
        if (value <= 0) throw ParseError("multiplier must be > 0", line_no, tab + 2);
        lex.intensifiers[term] = value;
        break;
      case Section::settings:
        if (term != "negationShift") throw ParseError("unknown setting '" + term + "'", line_no, 1);
        lex.negationShift = value;
        break;
      case Section::negators:
        break;
    }
  }
  lex.validate();
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read lexicon " + path.string());
  return read_lexicon(in);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Polarity label_for(double raw_score, const SentimentConfig& config) {
  if (raw_score < -config.epsilon) return Polarity::negative;
  if (raw_score > config.epsilon) return Polarity::positive;
  return Polarity::neutral;
}

PolarityPrediction classify(std::string_view text, const Lexicon& lexicon,
                            const SentimentConfig& config, std::string item) {
  if (lexicon.entries.empty()) throw Error(ErrorCode::kEmptyLexicon, "lexicon has no entries");
  PolarityPrediction out;
  out.item = std::move(item);
  const auto tokens = tokenize(text);
  double sum = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto hit = lexicon.entries.find(tokens[i]);
    if (hit == lexicon.entries.end()) continue;
    double contribution = hit->second;
    for (std::size_t j = i; j > 0; --j) {
      auto m = lexicon.intensifiers.find(tokens[j - 1]);
      if (m == lexicon.intensifiers.end()) break;
      contribution *= m->second;
    }
    bool negated = false;
    for (std::size_t j = i >= 3 ? i - 3 : 0; j < i; ++j) negated |= lexicon.negators.contains(tokens[j]);
    if (negated) {
      if (contribution > 0) {
        contribution -= lexicon.negationShift;
      } else if (contribution < 0) {
        contribution += lexicon.negationShift;
      }
    }
    out.evidence.push_back({tokens[i], contribution});
    sum += contribution;
  }
  out.rawScore = out.evidence.empty() ? 0.0 : sum / static_cast<double>(out.evidence.size());
  out.label = label_for(out.rawScore, config);
  return out;
}

std::vector<PolarityPrediction> batch_classify(
    const std::vector<std::pair<std::string, std::string>>& items, const Lexicon& lexicon,
    const SentimentConfig& config) {
  std::vector<PolarityPrediction> out;
  out.reserve(items.size());
  for (const auto& [item, text] : items) out.push_back(classify(text, lexicon, config, item));
  return out;
}

LexiconClassifier::LexiconClassifier(std::string name, Lexicon lexicon, SentimentConfig config)
    : name_(std::move(name)), lexicon_(std::move(lexicon)), config_(config) {}

PolarityPrediction LexiconClassifier::predict(const std::string& item, std::string_view text) const {
  return classify(text, lexicon_, config_, item);
}

Evaluation evaluate_against_ground_truth(const std::vector<PolarityPrediction>& predictions,
                                         const std::map<std::string, Polarity>& ground_truth) {
  // A repeated item keeps its last prediction.
  std::map<std::string, Polarity> latest;
  for (const auto& p : predictions) latest[p.item] = p.label;
  std::map<std::string, std::string> predicted, truth;
  for (const auto& [item, label] : latest) predicted[item] = std::string(to_string(label));
  for (const auto& [item, t] : ground_truth) truth[item] = std::string(to_string(t));

  Evaluation eval;
  eval.accuracy = analytics::classifier_accuracy(predicted, truth);
  for (const auto& [item, label] : latest) {
    auto t = ground_truth.find(item);
    if (t == ground_truth.end()) continue;
    ++eval.confusion[static_cast<std::size_t>(t->second)][static_cast<std::size_t>(label)];
  }
  return eval;
}

}  // namespace linkflows::sentiment
