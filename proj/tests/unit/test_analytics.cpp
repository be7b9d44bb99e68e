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

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "../support/fixtures.hpp"
#include "linkflows/analytics.hpp"

using namespace linkflows;
using namespace linkflows::analytics;
using linkflows::testing::VectorView;

namespace {

// Kappa from explicit rater pairs, no closed forms.
double pair_counting_kappa(const std::vector<std::vector<int>>& counts) {
  std::vector<std::vector<int>> ratings;  // per item, one category per rating
  std::vector<int> pooled;
  for (const auto& row : counts) {
    ratings.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      for (int r = 0; r < row[c]; ++r) {
        ratings.back().push_back(static_cast<int>(c));
        pooled.push_back(static_cast<int>(c));
      }
    }
  }
  double observed = 0;
  for (const auto& item : ratings) {
    double agree = 0, pairs = 0;
    for (std::size_t i = 0; i < item.size(); ++i) {
      for (std::size_t j = 0; j < item.size(); ++j) {
        if (i == j) continue;
        pairs += 1;
        agree += item[i] == item[j];
      }
    }
    observed += agree / pairs;
  }
  observed /= static_cast<double>(ratings.size());
  double chance = 0;
  for (int a : pooled) {
    for (int b : pooled) chance += a == b;
  }
  chance /= static_cast<double>(pooled.size()) * static_cast<double>(pooled.size());
  return (observed - chance) / (1 - chance);
}

// Disagreement written straight from its definition.
double oracle_disagreement(const GroupResponses& a, const GroupResponses& b, const Dimension& d) {
  double sum = 0;
  std::size_t cells = 0;
  for (const auto& [item, answers_a] : a) {
    auto it = b.find(item);
    if (it == b.end() || answers_a.empty() || it->second.empty()) continue;
    const auto& answers_b = it->second;
    if (d.kind == DimensionKind::ordinal) {
      auto mean = [&](const std::vector<std::string>& xs) {
        double s = 0;
        for (const auto& x : xs) s += static_cast<double>(*d.index_of(x)) / (d.size() - 1.0);
        return s / static_cast<double>(xs.size());
      };
      const double diff = mean(answers_a) - mean(answers_b);
      sum += diff * diff;
      ++cells;
    } else {
      for (const auto& cat : d.categories) {
        auto ratio = [&](const std::vector<std::string>& xs) {
          return static_cast<double>(std::count(xs.begin(), xs.end(), cat)) / static_cast<double>(xs.size());
        };
        const double diff = ratio(answers_a) - ratio(answers_b);
        sum += diff * diff;
        ++cells;
      }
    }
  }
  return std::sqrt(sum / static_cast<double>(cells));
}

GroupResponses random_group(std::mt19937_64& rng, const Dimension& d, std::size_t items) {
  GroupResponses g;
  for (std::size_t i = 0; i < items; ++i) {
    auto& answers = g["item" + std::to_string(i)];
    for (std::size_t n = 1 + rng() % 6; n > 0; --n) answers.push_back(d.categories[rng() % d.size()]);
  }
  return g;
}

// Two-sided exact p by enumerating all sign patterns over average ranks.
double brute_wilcoxon_p(const std::vector<double>& diffs, double* w_out) {
  std::vector<double> nz;
  for (double d : diffs) {
    if (d != 0) nz.push_back(d);
  }
  const std::size_t n = nz.size();
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(nz[j]) < std::abs(nz[i])) ++below;
      if (std::abs(nz[j]) == std::abs(nz[i])) ++equal;
    }
    ranks[i] = below + (equal + 1) / 2;
  }
  double w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (nz[i] > 0) w += ranks[i];
  }
  *w_out = w;
  const double center = static_cast<double>(n * (n + 1)) / 4;
  std::size_t extreme = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s += ranks[i];
    }
    if (std::abs(s - center) >= std::abs(w - center) - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(1u << n);
}

}  // namespace

TEST_CASE("kappa: hand fixtures") {
  const auto perfect = fleiss_kappa({{3, 0}, {0, 3}}, 3);
  REQUIRE(perfect.kappa);
  CHECK(*perfect.kappa == 1.0);

  const auto derived = fleiss_kappa({{2, 1}, {1, 2}}, 3);
  CHECK(derived.PbarObserved == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(derived.PeExpected == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(derived.kappa);
  CHECK(std::abs(*derived.kappa - (-1.0 / 3)) < 1e-9);

  const auto degenerate = fleiss_kappa({{4, 0, 0}, {4, 0, 0}}, 4);
  CHECK_FALSE(degenerate.kappa);
  CHECK_FALSE(degenerate.note.empty());

  CHECK_THROWS_AS(fleiss_kappa({{2, 1}, {1, 1}}, 3), Error);
  CHECK_THROWS_AS(fleiss_kappa({{1, 0}}, 1), Error);
  CHECK_THROWS_AS(fleiss_kappa({}, 3), Error);
}

TEST_CASE("kappa: agrees with pair counting on random matrices") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t items = 1 + rng() % 12, cats = 2 + rng() % 4, raters = 2 + rng() % 7;
    std::vector<std::vector<int>> counts(items, std::vector<int>(cats, 0));
    for (auto& row : counts) {
      for (std::size_t r = 0; r < raters; ++r) ++row[rng() % cats];
    }
    const auto report = fleiss_kappa(counts, raters);
    if (!report.kappa) continue;  // every rating in one category
    CHECK(std::abs(*report.kappa - pair_counting_kappa(counts)) < 1e-9);
    ++checked;
  }
  CHECK(checked >= 95);
}

TEST_CASE("kappa: unanimous items with varying categories give exactly 1") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 100; ++round) {
    const std::size_t items = 2 + rng() % 10, cats = 2 + rng() % 4, raters = 2 + rng() % 6;
    std::vector<std::vector<int>> counts(items, std::vector<int>(cats, 0));
    for (std::size_t i = 0; i < items; ++i) counts[i][i < 2 ? i : rng() % cats] = static_cast<int>(raters);
    const auto report = fleiss_kappa(counts, raters);
    REQUIRE(report.kappa);
    CHECK(*report.kappa == 1.0);
  }
}

TEST_CASE("disagreement: hand cases") {
  const std::vector<std::string> a{"syntax"}, b{"style"};
  CHECK(std::abs(item_disagreement(a, b, dimension(DimensionName::aspect)) - std::sqrt(2.0 / 3)) < 1e-9);
  const auto r = disagreement_score({{"t", {"syntax"}}}, {{"t", {"style"}}}, DimensionName::aspect);
  CHECK(std::abs(r.score - std::sqrt(2.0 / 3)) < 1e-9);
  CHECK(disagreement_score({{"t", {"5"}}}, {{"t", {"1"}}}, DimensionName::impact).score == 1.0);

  // Only shared items count.
  const auto partial = disagreement_score({{"t", {"1"}}, {"u", {"5"}}}, {{"t", {"1"}}, {"v", {"1"}}},
                                          DimensionName::impact);
  CHECK(partial.score == 0.0);
  CHECK(partial.items == std::vector<std::string>{"t"});

  CHECK_THROWS_AS(disagreement_score({{"t", {"1"}}}, {{"u", {"1"}}}, DimensionName::impact), Error);
  CHECK_THROWS_AS(disagreement_score({{"t", {"bogus"}}}, {{"t", {"1"}}}, DimensionName::impact), Error);
}

TEST_CASE("disagreement: properties over 1000 random instances") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 1000; ++round) {
    const auto name = kAllDimensions[rng() % kAllDimensions.size()];
    const auto& d = dimension(name);
    const std::size_t items = 1 + rng() % 10;
    const auto a = random_group(rng, d, items);
    const auto b = random_group(rng, d, items);
    const double ab = disagreement_score(a, b, name).score;
    CHECK(disagreement_score(a, a, name).score == 0.0);
    CHECK(ab == disagreement_score(b, a, name).score);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(std::abs(ab - oracle_disagreement(a, b, d)) < 1e-12);
  }
}

TEST_CASE("baseline: analytic values and enumeration") {
  CHECK(std::abs(random_baseline(DimensionName::aspect) - 2.0 / 3) < 1e-12);
  CHECK(std::abs(random_baseline(DimensionName::actionNeeded) - 2.0 / 3) < 1e-12);
  CHECK(std::abs(random_baseline(DimensionName::actionTaken) - 2.0 / 3) < 1e-12);
  CHECK(std::abs(random_baseline(DimensionName::polarity) - std::sqrt(1.0 / 3)) < 1e-12);
  CHECK(std::abs(random_baseline(DimensionName::impact) - 0.5) < 1e-12);

  // Expected squared difference over every pair of single answers.
  for (auto name : kAllDimensions) {
    const auto& d = dimension(name);
    double total = 0;
    for (const auto& x : d.categories) {
      for (const auto& y : d.categories) {
        const std::vector<std::string> a{x}, b{y};
        const double s = item_disagreement(a, b, d);
        total += s * s;
      }
    }
    const double enumerated = std::sqrt(total / static_cast<double>(d.size() * d.size()));
    CHECK(std::abs(random_baseline(name) - enumerated) < 1e-12);
  }
}

TEST_CASE("baseline: Monte Carlo converges within 0.01") {
  const auto start = std::chrono::steady_clock::now();
  for (auto name : kAllDimensions) {
    const double mc = random_baseline(name, MonteCarlo{100000, 7});
    CHECK(std::abs(mc - random_baseline(name)) < 0.01);
    CHECK(mc == random_baseline(name, MonteCarlo{100000, 7}));
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
  CHECK_THROWS_AS(random_baseline(DimensionName::aspect, MonteCarlo{0, 1}), Error);
}

TEST_CASE("wilcoxon: hand cases") {
  const std::vector<double> five{1, 2, 3, 4, 5};
  const auto r = wilcoxon_signed_rank(five);
  CHECK(r.W == 15);
  CHECK(r.p == doctest::Approx(0.0625).epsilon(1e-12));
  CHECK(r.method == WilcoxonMethod::exact);

  const std::vector<double> symmetric{1, -1, 2, -2};
  CHECK(wilcoxon_signed_rank(symmetric).p == doctest::Approx(1.0));

  const std::vector<double> with_zeros{0, 0, 3, -1, 2};
  const auto z = wilcoxon_signed_rank(with_zeros);
  CHECK(z.zerosDropped == 2);
  CHECK(z.n == 3);

  const std::vector<double> zeros{0, 0};
  try {
    wilcoxon_signed_rank(zeros);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAllZeroDifferences);
  }
}

TEST_CASE("wilcoxon: exact path equals sign-pattern enumeration for n <= 12") {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 300; ++round) {
    std::vector<double> diffs;
    for (std::size_t n = 1 + rng() % 12; n > 0; --n) {
      // Small integers give plenty of ties and zeros.
      diffs.push_back(static_cast<double>(static_cast<int>(rng() % 9) - 4) * (rng() % 3 == 0 ? 0.5 : 1));
    }
    if (std::all_of(diffs.begin(), diffs.end(), [](double d) { return d == 0; })) continue;
    double w = 0;
    const double p = brute_wilcoxon_p(diffs, &w);
    const auto r = wilcoxon_signed_rank(diffs, WilcoxonMethod::exact);
    CHECK(r.W == doctest::Approx(w));
    CHECK(std::abs(r.p - p) < 1e-12);
    CHECK(r.p > 0);
    CHECK(r.p <= 1);
  }
}

TEST_CASE("wilcoxon: exact and approximate agree at n = 15") {
  std::mt19937_64 rng(45);
  std::normal_distribution<double> normal(0.3, 1.0);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> diffs(15);
    for (auto& d : diffs) d = normal(rng);
    const auto exact = wilcoxon_signed_rank(diffs, WilcoxonMethod::exact);
    const auto approx = wilcoxon_signed_rank(diffs, WilcoxonMethod::approximate);
    CHECK(exact.method == WilcoxonMethod::exact);
    CHECK(approx.method == WilcoxonMethod::approximate);
    CHECK(std::abs(exact.p - approx.p) < 0.01);
  }
  // Every reachable W with distinct magnitudes 1..15, including the
  // null-typical middle where a plain normal curve is off by about 0.011.
  for (int w = 0; w <= 120; ++w) {
    std::vector<double> diffs;
    int left = w;
    for (int r = 15; r >= 1; --r) {
      const bool positive = left >= r;
      if (positive) left -= r;
      diffs.push_back(positive ? r : -r);
    }
    const auto exact = wilcoxon_signed_rank(diffs, WilcoxonMethod::exact);
    REQUIRE(exact.W == w);
    CHECK(std::abs(exact.p - wilcoxon_signed_rank(diffs, WilcoxonMethod::approximate).p) < 0.01);
  }
  std::vector<double> extreme(200, 1.0);
  extreme[0] = 2.0;
  const auto tail = wilcoxon_signed_rank(extreme, WilcoxonMethod::approximate);
  CHECK(tail.p > 0);
  CHECK(tail.p < 1e-20);

  std::vector<double> many(30);
  std::iota(many.begin(), many.end(), 1.0);
  CHECK(wilcoxon_signed_rank(many).method == WilcoxonMethod::approximate);
}

TEST_CASE("subgroups: seeded partition") {
  std::mt19937_64 rng(46);
  const auto& d = dimension(DimensionName::impact);
  RaterResponses peers;
  for (int r = 0; r < 12; ++r) {
    auto& answers = peers["peer" + std::to_string(r)];
    for (int i = 0; i < 8; ++i) answers["item" + std::to_string(i)] = d.categories[rng() % d.size()];
  }
  GroupResponses reference;
  for (int i = 0; i < 8; ++i) reference["item" + std::to_string(i)] = {d.categories[rng() % d.size()]};

  const auto report = subgroup_analysis(peers, reference, DimensionName::impact, 3, 9);
  REQUIRE(report.groups.size() == 4);
  CHECK(report.droppedRaters.empty());
  double sum = 0;
  std::set<std::string> seen;
  for (std::size_t g = 0; g < 4; ++g) {
    GroupResponses members;
    for (const auto& rater : report.members[g]) {
      CHECK(seen.insert(rater).second);
      for (const auto& [item, answer] : peers.at(rater)) members[item].push_back(answer);
    }
    const double score = disagreement_score(members, reference, DimensionName::impact).score;
    CHECK(report.groups[g].score == score);
    sum += score;
  }
  CHECK(std::abs(report.meanScore - sum / 4) < 1e-12);
  CHECK(subgroup_analysis(peers, reference, DimensionName::impact, 3, 9).members == report.members);

  // One group of everyone equals the whole-group score.
  GroupResponses all;
  for (const auto& [rater, answers] : peers) {
    for (const auto& [item, answer] : answers) all[item].push_back(answer);
  }
  const auto single = subgroup_analysis(peers, reference, DimensionName::impact, 12, 3);
  CHECK(single.meanScore == disagreement_score(all, reference, DimensionName::impact).score);
  CHECK(single.stdDev == 0);

  const auto five = subgroup_analysis(peers, reference, DimensionName::impact, 5, 1);
  CHECK(five.groups.size() == 2);
  CHECK(five.droppedRaters.size() == 2);

  RaterResponses same;
  for (int r = 0; r < 9; ++r) same["p" + std::to_string(r)] = {{"item0", "2"}, {"item1", "4"}};
  CHECK(subgroup_analysis(same, reference, DimensionName::impact, 3, 5).stdDev == 0);

  CHECK_THROWS_AS(subgroup_analysis(peers, reference, DimensionName::impact, 13, 1), Error);
  CHECK_THROWS_AS(subgroup_analysis(peers, reference, DimensionName::impact, 0, 1), Error);
}

TEST_CASE("subgroups: shuffle is a seeded permutation") {
  std::vector<std::string> items;
  for (int i = 0; i < 50; ++i) items.push_back("r" + std::to_string(i));
  const auto a = seeded_shuffle(items, 1);
  CHECK(a == seeded_shuffle(items, 1));
  CHECK(a != seeded_shuffle(items, 2));
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  auto expected = items;
  std::sort(expected.begin(), expected.end());
  CHECK(sorted == expected);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) CHECK(bounded_random(rng, 7) < 7);
}

TEST_CASE("distribution: counts per granularity and category") {
  using linkflows::testing::fixed_time;
  std::vector<NodeRecord> records;
  auto snippet = [&](const char* id, GranularityLevel level) {
    SnippetNode s;
    s.id = Iri::parse(std::string("http://ex.org/") + id);
    s.level = level;
    s.text = id;
    records.push_back(s);
    return s.id;
  };
  const auto art = snippet("a", GranularityLevel::article);
  const auto sec = snippet("s", GranularityLevel::section);
  const auto par = snippet("p", GranularityLevel::paragraph);
  int n = 0;
  auto comment = [&](const Iri& target, Polarity p) {
    ReviewComment c;
    c.id = Iri::parse("http://ex.org/c" + std::to_string(n++));
    c.refersTo = target;
    c.text = "x";
    c.author = Iri::parse("http://ex.org/who");
    c.aspect = Aspect::content;
    c.polarity = p;
    c.actionNeeded = ActionNeeded::suggestion;
    c.impact = ImpactScore(3);
    records.push_back(c);
  };
  comment(art, Polarity::positive);
  comment(art, Polarity::negative);
  comment(sec, Polarity::negative);
  comment(sec, Polarity::negative);
  for (int i = 0; i < 4; ++i) comment(par, Polarity::neutral);

  const auto report = distribution_report(VectorView(records));
  CHECK(report.totalComments == 8);
  REQUIRE(report.granularity.size() == 3);
  CHECK(report.granularity[0].percent == 25.0);
  CHECK(report.granularity[1].percent == 25.0);
  CHECK(report.granularity[2].percent == 50.0);
  const auto& polarity = report.dimensions.at("polarity");
  CHECK(polarity[0].count == 3);
  CHECK(polarity[1].count == 4);
  CHECK(polarity[2].count == 1);
  CHECK(report.dimensions.at("impact")[2].percent == 100.0);

  const GranularityLevel one[] = {GranularityLevel::paragraph};
  CHECK(granularity_shares(one)[2].percent == 100.0);
  CHECK_THROWS_AS(distribution_report(VectorView({})), Error);
}

TEST_CASE("no-answer report") {
  std::vector<AnnotationRecord> records;
  for (int i = 0; i < 10; ++i) {
    AnnotationRecord r{"r1", RaterGroup::peers, "item" + std::to_string(i), DimensionName::impact, std::string("3")};
    if (i == 0) r.answer = CannotAnswer::moreContextNeeded;
    records.push_back(r);
  }
  for (int i = 0; i < 10; ++i) {
    records.push_back({"r1", RaterGroup::peers, "item" + std::to_string(i), DimensionName::aspect,
                       i < 2 ? std::variant<std::string, CannotAnswer>(CannotAnswer::confusing)
                             : std::variant<std::string, CannotAnswer>(std::string("style"))});
  }
  const auto report = no_answer_report(records);
  CHECK(report.perDimension.size() == 5);
  CHECK(report.perDimension.at(DimensionName::impact).pctMoreContext == 10.0);
  CHECK(report.perDimension.at(DimensionName::impact).pctTotal == 10.0);
  CHECK(report.perDimension.at(DimensionName::aspect).pctConfusing == 20.0);
  CHECK(report.perDimension.at(DimensionName::polarity).records == 0);
  CHECK(report.overall.records == 20);
  CHECK(report.overall.pctTotal == 15.0);

  records.resize(0);
  const auto empty = no_answer_report(records);
  CHECK(empty.overall.pctTotal == 0.0);
}

TEST_CASE("accuracy: hand-counted fixtures") {
  std::map<std::string, std::string> truth, pred;
  for (int i = 0; i < 11; ++i) {
    truth["c" + std::to_string(i)] = i % 3 == 0 ? "negative" : "positive";
    pred["c" + std::to_string(i)] = i < 8 ? truth["c" + std::to_string(i)] : "neutral";
  }
  const auto r = classifier_accuracy(pred, truth);
  CHECK(r.correct == 8);
  CHECK(r.items == 11);
  CHECK(std::round(r.accuracy * 10000) / 10000 == 0.7273);
  // The published 72.8% is within rounding of 8/11 = 72.73%.
  CHECK(std::abs(r.accuracy * 100 - 72.8) < 0.1);

  // Relabelling items changes nothing.
  std::map<std::string, std::string> truth2, pred2;
  for (const auto& [k, v] : truth) truth2["z" + k] = v;
  for (const auto& [k, v] : pred) pred2["z" + k] = v;
  CHECK(classifier_accuracy(pred2, truth2).accuracy == r.accuracy);

  CHECK(classifier_accuracy({{"a", "x"}, {"b", "y"}}, {{"a", "x"}, {"b", "x"}}).accuracy == 0.5);
  CHECK(classifier_accuracy(truth, truth).accuracy == 1.0);
  CHECK_THROWS_AS(classifier_accuracy({{"a", "x"}}, {{"b", "x"}}), Error);
}
