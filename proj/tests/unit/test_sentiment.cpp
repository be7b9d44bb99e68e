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
#include <random>
#include <sstream>

#include "linkflows/sentiment.hpp"

using namespace linkflows;
using namespace linkflows::sentiment;

namespace {

Lexicon toy() { return load_lexicon(std::string(LINKFLOWS_TEST_DATA) + "/toy-lexicon.tsv"); }

std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& name) {
  std::ifstream in(std::string(LINKFLOWS_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
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

}  // namespace

TEST_CASE("sentiment: tokenizer") {
  CHECK(tokenize("Not GOOD, very-good! x2") ==
        std::vector<std::string>{"not", "good", "very", "good", "x2"});
  CHECK(tokenize("caf\xC3\xA9 ok") == std::vector<std::string>{"caf\xC3\xA9", "ok"});
  CHECK(tokenize("  ...  ").empty());
}

TEST_CASE("sentiment: hand traces") {
  Lexicon lex;
  lex.entries = {{"good", 3}};
  lex.negators = {"not"};
  lex.intensifiers = {{"very", 1.5}};

  const auto negated = classify("not good", lex);
  CHECK(negated.rawScore == -1.0);
  CHECK(negated.label == Polarity::negative);
  CHECK(negated.evidence == std::vector<Evidence>{{"good", -1.0}});

  const auto intensified = classify("very good", lex);
  CHECK(intensified.rawScore == 4.5);
  CHECK(intensified.label == Polarity::positive);

  CHECK(classify("not very good", lex).rawScore == 0.5);       // 4.5 - 4
  CHECK(classify("not at all very good", lex).rawScore == 4.5);  // negator four tokens back
  CHECK(classify("nothing here", lex).rawScore == 0.0);
  CHECK(classify("nothing here", lex).label == Polarity::neutral);
  CHECK(classify("good not", lex).rawScore == 3.0);
  CHECK(classify("x", lex).warning == kMethodologicalWarning);

  lex.entries["bad"] = -3;
  CHECK(classify("not bad", lex).rawScore == 1.0);  // shifted, not flipped
  CHECK(classify("good bad", lex).rawScore == 0.0);

  CHECK(code_of([] { classify("good", Lexicon{}); }) == ErrorCode::kEmptyLexicon);
}

TEST_CASE("sentiment: labels follow the neutral band") {
  const SentimentConfig cfg{0.5};
  CHECK(label_for(0.5, cfg) == Polarity::neutral);
  CHECK(label_for(-0.5, cfg) == Polarity::neutral);
  CHECK(label_for(0.5001, cfg) == Polarity::positive);
  CHECK(label_for(-0.5001, cfg) == Polarity::negative);

  std::mt19937_64 rng(51);
  const auto lex = toy();
  const std::vector<std::string> words{"good", "clear", "bad", "unclear", "wrong", "excellent",
                                       "very", "slightly", "not", "never", "the", "paper"};
  for (int round = 0; round < 2000; ++round) {
    std::string text;
    for (std::size_t n = rng() % 10; n > 0; --n) text += words[rng() % words.size()] + " ";
    const SentimentConfig c{static_cast<double>(rng() % 20) / 10};
    const auto p = classify(text, lex, c);
    CHECK((std::abs(p.rawScore) <= c.epsilon) == (p.label == Polarity::neutral));
    CHECK(p == classify(text, lex, c));
    const bool all_positive = !p.evidence.empty() &&
        std::all_of(p.evidence.begin(), p.evidence.end(), [](const Evidence& e) { return e.contribution > 0; });
    const bool all_negative = !p.evidence.empty() &&
        std::all_of(p.evidence.begin(), p.evidence.end(), [](const Evidence& e) { return e.contribution < 0; });
    if (all_positive) CHECK(p.label != Polarity::negative);
    if (all_negative) CHECK(p.label != Polarity::positive);
  }
}

TEST_CASE("sentiment: the ten-item fixture matches the hand count") {
  const auto lex = toy();
  const auto items = read_pairs("sentiment-items.tsv");
  std::map<std::string, Polarity> truth;
  for (const auto& [item, label] : read_pairs("sentiment-truth.tsv")) truth[item] = *parse_polarity(label);
  REQUIRE(items.size() == 10);

  const auto predictions = batch_classify(items, lex);
  REQUIRE(predictions.size() == 10);
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(predictions[i].item == items[i].first);
    CHECK(predictions[i] == classify(items[i].second, lex, {}, items[i].first));
  }
  CHECK(batch_classify(items, lex) == predictions);

  // Traced by hand: i5 (3 and -3 cancel), i7 (slightly unclear = -1) and
  // i10 (plain "good") disagree with the annotated polarity.
  CHECK(predictions[4].rawScore == 0.0);
  CHECK(predictions[6].rawScore == -1.0);
  CHECK(predictions[7].rawScore == 1.0);
  CHECK(predictions[8].rawScore == -1.5);

  const auto eval = evaluate_against_ground_truth(predictions, truth);
  CHECK(eval.accuracy.correct == 7);
  CHECK(eval.accuracy.items == 10);
  CHECK(eval.accuracy.accuracy == 0.7);
  using P = Polarity;
  auto cell = [&](P t, P p) { return eval.confusion[static_cast<int>(t)][static_cast<int>(p)]; };
  CHECK(cell(P::negative, P::negative) == 3);
  CHECK(cell(P::negative, P::neutral) == 1);
  CHECK(cell(P::neutral, P::neutral) == 1);
  CHECK(cell(P::neutral, P::negative) == 1);
  CHECK(cell(P::neutral, P::positive) == 1);
  CHECK(cell(P::positive, P::positive) == 3);
  std::size_t total = 0, trace = 0;
  for (int t = 0; t < 3; ++t) {
    for (int p = 0; p < 3; ++p) total += eval.confusion[t][p];
    trace += eval.confusion[t][t];
  }
  CHECK(total == 10);
  CHECK(static_cast<double>(trace) / total == eval.accuracy.accuracy);
}

TEST_CASE("sentiment: evaluation counting") {
  std::vector<PolarityPrediction> preds;
  std::map<std::string, Polarity> truth;
  for (int i = 0; i < 4; ++i) {
    PolarityPrediction p;
    p.item = "c" + std::to_string(i);
    p.label = Polarity::neutral;
    preds.push_back(p);
    truth[p.item] = Polarity::negative;
  }
  const auto eval = evaluate_against_ground_truth(preds, truth);
  CHECK(eval.accuracy.accuracy == 0.0);
  CHECK(eval.confusion[0][1] == 4);

  for (auto& p : preds) p.label = Polarity::negative;
  CHECK(evaluate_against_ground_truth(preds, truth).accuracy.accuracy == 1.0);
  CHECK(code_of([&] { evaluate_against_ground_truth(preds, {{"other", Polarity::neutral}}); }) ==
        ErrorCode::kEmptyOverlap);
}

TEST_CASE("sentiment: lexicon files") {
  const auto shipped = load_lexicon(LINKFLOWS_LEXICON);
  CHECK(shipped.entries.size() >= 200);
  CHECK_FALSE(shipped.intensifiers.empty());
  CHECK(shipped.negators.contains("not"));
  CHECK_NOTHROW(shipped.validate());
  CHECK(classify("The proof is not correct.", shipped).label == Polarity::negative);
  CHECK(classify("A very clear and convincing paper.", shipped).label == Polarity::positive);

  std::istringstream ok("# c\nfine\t1\n\n[negators]\nno\n[settings]\nnegationShift\t2.5\n");
  const auto lex = read_lexicon(ok);
  CHECK(lex.entries.at("fine") == 1);
  CHECK(lex.negators.contains("no"));
  CHECK(lex.negationShift == 2.5);

  for (const char* bad : {"good\n", "good\tx\n", "good\t9\n", "[intensifiers]\nvery\t-1\n",
                          "[weird]\n", "[settings]\nfoo\t1\n", "Two words\t1\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_lexicon(in), Error);
  }
  CHECK(code_of([] { load_lexicon("/nonexistent/lexicon.tsv"); }) == ErrorCode::kIo);

  const LexiconClassifier classifier("toy", toy());
  CHECK(classifier.name() == "toy");
  CHECK(classifier.predict("x", "very good").rawScore == 4.5);
}
