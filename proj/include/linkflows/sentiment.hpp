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

// Lexicon-based polarity baseline for review comment text.
//
// Lexicon file format (UTF-8, tab separated, '#' starts a comment line):
//
//   good        3          default section: term <TAB> valence in [-5, 5]
//   [intensifiers]
//   very        1.5        term <TAB> multiplier > 0
//   [negators]
//   not                    one term per line
//   [settings]
//   negationShift  4
//
// Terms are single lowercase tokens.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkflows/analytics.hpp"
#include "linkflows/model.hpp"

namespace linkflows::sentiment {

inline constexpr std::string_view kMethodologicalWarning =
    "lexical sentiment measures how a comment is phrased, not whether it raises a "
    "negative, neutral or positive point; use as a baseline only";

struct Lexicon {
  std::map<std::string, double> entries;
  std::map<std::string, double> intensifiers;
  std::set<std::string> negators;
  double negationShift = 4.0;

  // Throws Error(kInvalidArgument) on out-of-range values.
  void validate() const;
};

// Throws ParseError with the offending line.
Lexicon read_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);

struct SentimentConfig {
  double epsilon = 0.5;
};

struct Evidence {
  std::string term;
  double contribution = 0;

  bool operator==(const Evidence&) const = default;
};

struct PolarityPrediction {
  std::string item;
  double rawScore = 0;
  Polarity label = Polarity::neutral;
  std::vector<Evidence> evidence;
  std::string warning{kMethodologicalWarning};

  bool operator==(const PolarityPrediction&) const = default;
};

// Lowercased runs of letters and digits; bytes >= 0x80 count as letters.
std::vector<std::string> tokenize(std::string_view text);

Polarity label_for(double raw_score, const SentimentConfig& config);

// Each lexicon hit contributes valence times the product of the intensifier
// multipliers immediately before it; a negator among the three preceding
// tokens moves the contribution by negationShift towards the opposite sign.
// rawScore is the mean contribution (0 without hits). Throws kEmptyLexicon.
PolarityPrediction classify(std::string_view text, const Lexicon& lexicon,
                            const SentimentConfig& config = {}, std::string item = {});

std::vector<PolarityPrediction> batch_classify(
    const std::vector<std::pair<std::string, std::string>>& items, const Lexicon& lexicon,
    const SentimentConfig& config = {});

// Pluggable classifiers for comparisons.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string name() const = 0;
  virtual PolarityPrediction predict(const std::string& item, std::string_view text) const = 0;
};

class LexiconClassifier final : public Classifier {
 public:
  LexiconClassifier(std::string name, Lexicon lexicon, SentimentConfig config = {});
  std::string name() const override { return name_; }
  PolarityPrediction predict(const std::string& item, std::string_view text) const override;

 private:
  std::string name_;
  Lexicon lexicon_;
  SentimentConfig config_;
};

struct Evaluation {
  analytics::AccuracyReport accuracy;
  // confusion[truth][predicted], indexed by Polarity.
  std::array<std::array<std::size_t, 3>, 3> confusion{};
};

// Over the shared items. Throws kEmptyOverlap.
Evaluation evaluate_against_ground_truth(const std::vector<PolarityPrediction>& predictions,
                                         const std::map<std::string, Polarity>& ground_truth);

}  // namespace linkflows::sentiment
