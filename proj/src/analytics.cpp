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

#include "linkflows/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace linkflows::analytics {

namespace {

Dimension make_nominal(DimensionName name, std::vector<std::string> categories) {
  return {name, DimensionKind::nominal, std::move(categories), {}};
}

Dimension make_ordinal(DimensionName name, std::vector<std::string> categories) {
  const auto m = categories.size();
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = static_cast<double>(i) / static_cast<double>(m - 1);
  return {name, DimensionKind::ordinal, std::move(categories), std::move(values)};
}

const std::array<Dimension, 5>& dimension_table() {
  static const std::array<Dimension, 5> kTable{
      make_nominal(DimensionName::aspect, {"syntax", "style", "content"}),
      make_ordinal(DimensionName::polarity, {"negative", "neutral", "positive"}),
      make_nominal(DimensionName::actionNeeded, {"actionNeeded", "suggestion", "noActionNeeded"}),
      make_ordinal(DimensionName::impact, {"1", "2", "3", "4", "5"}),
      make_nominal(DimensionName::actionTaken,
                   {"addressed", "partiallyAddressed", "notAddressed"}),
  };
  return kTable;
}

std::size_t category_index(const Dimension& d, std::string_view answer) {
  auto idx = d.index_of(answer);
  if (!idx) {
    throw Error(ErrorCode::kInvalidArgument, "'" + std::string(answer) +
                                                 "' is not a category of " +
                                                 std::string(to_string(d.name)));
  }
  return *idx;
}

struct SquaredCells {
  double sum = 0;
  std::size_t cells = 0;
};

SquaredCells item_squared(std::span<const std::string> a, std::span<const std::string> b,
                          const Dimension& d) {
  if (d.kind == DimensionKind::ordinal) {
    auto mean = [&](std::span<const std::string> answers) {
      double s = 0;
      for (const auto& x : answers) s += d.normalizedValues[category_index(d, x)];
      return s / static_cast<double>(answers.size());
    };
    const double diff = mean(a) - mean(b);
    return {diff * diff, 1};
  }
  std::vector<double> ra(d.size(), 0.0), rb(d.size(), 0.0);
  for (const auto& x : a) ra[category_index(d, x)] += 1.0 / static_cast<double>(a.size());
  for (const auto& x : b) rb[category_index(d, x)] += 1.0 / static_cast<double>(b.size());
  SquaredCells out{0, d.size()};
  for (std::size_t c = 0; c < d.size(); ++c) out.sum += (ra[c] - rb[c]) * (ra[c] - rb[c]);
  return out;
}

}  // namespace

std::optional<std::size_t> Dimension::index_of(std::string_view category) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == category) return i;
  }
  return std::nullopt;
}

const Dimension& dimension(DimensionName name) {
  return dimension_table()[static_cast<std::size_t>(name)];
}

std::string_view to_string(DimensionName name) {
  switch (name) {
    case DimensionName::aspect: return "aspect";
    case DimensionName::polarity: return "polarity";
    case DimensionName::actionNeeded: return "actionNeeded";
    case DimensionName::impact: return "impact";
    case DimensionName::actionTaken: return "actionTaken";
  }
  return "?";
}

DimensionName parse_dimension(std::string_view name) {
  for (auto d : kAllDimensions) {
    if (to_string(d) == name) return d;
  }
  throw Error(ErrorCode::kUnknownDimension, "unknown dimension '" + std::string(name) + "'");
}

std::string_view to_string(RaterGroup g) {
  switch (g) {
    case RaterGroup::reviewer: return "reviewer";
    case RaterGroup::modelExperts: return "modelExperts";
    case RaterGroup::peers: return "peers";
    case RaterGroup::tool: return "tool";
  }
  return "?";
}

std::optional<RaterGroup> parse_rater_group(std::string_view s) {
  for (auto g : {RaterGroup::reviewer, RaterGroup::modelExperts, RaterGroup::peers,
                 RaterGroup::tool}) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

std::string_view to_string(CannotAnswer c) {
  return c == CannotAnswer::moreContextNeeded ? "moreContextNeeded" : "confusing";
}

std::optional<CannotAnswer> parse_cannot_answer(std::string_view s) {
  if (s == "moreContextNeeded") return CannotAnswer::moreContextNeeded;
  if (s == "confusing") return CannotAnswer::confusing;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

KappaReport fleiss_kappa(const std::vector<std::vector<int>>& counts,
                         std::size_t n_raters_per_item, DimensionName dim) {
  if (counts.empty()) throw Error(ErrorCode::kInvalidArgument, "kappa needs at least one item");
  if (n_raters_per_item < 2) {
    throw Error(ErrorCode::kInvalidArgument, "kappa needs at least two raters per item");
  }
  const std::size_t k = counts.front().size();
  const double n = static_cast<double>(n_raters_per_item);
  std::vector<double> category_totals(k, 0.0);
  double p_bar = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto& row = counts[i];
    if (row.size() != k) {
      throw Error(ErrorCode::kInvalidArgument, "rows have different category counts");
    }
    long long total = 0;
    double agreeing = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (row[c] < 0) throw Error(ErrorCode::kInvalidArgument, "negative count");
      total += row[c];
      agreeing += static_cast<double>(row[c]) * (row[c] - 1);
      category_totals[c] += row[c];
    }
    if (total != static_cast<long long>(n_raters_per_item)) {
      throw Error(ErrorCode::kUnequalRaterCounts,
                  "item " + std::to_string(i) + " has " + std::to_string(total) +
                      " ratings, expected " + std::to_string(n_raters_per_item));
    }
    p_bar += agreeing / (n * (n - 1));
  }
  const double items = static_cast<double>(counts.size());
  p_bar /= items;
  double p_e = 0;
  for (double t : category_totals) {
    const double p = t / (items * n);
    p_e += p * p;
  }

  KappaReport report;
  report.dimension = dim;
  report.nItems = counts.size();
  report.nRatersPerItem = n_raters_per_item;
  report.PbarObserved = p_bar;
  report.PeExpected = p_e;
  if (p_e >= 1.0 - 1e-12) {
    report.note = "undefined: every rating falls into a single category (P_e = 1)";
  } else {
    report.kappa = (p_bar - p_e) / (1.0 - p_e);
  }
  return report;
}

// ---------------------------------------------------------------------------

double item_disagreement(std::span<const std::string> a, std::span<const std::string> b,
                         const Dimension& d) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyOverlap, "empty answer set");
  const auto sq = item_squared(a, b, d);
  return std::sqrt(sq.sum / static_cast<double>(sq.cells));
}

DisagreementReport disagreement_score(const GroupResponses& a, const GroupResponses& b,
                                      DimensionName name) {
  const Dimension& d = dimension(name);
  DisagreementReport report;
  report.dimension = name;
  double sum = 0;
  std::size_t cells = 0;
  for (const auto& [item, answers_a] : a) {
    auto it = b.find(item);
    if (answers_a.empty() || it == b.end() || it->second.empty()) continue;
    const auto sq = item_squared(answers_a, it->second, d);
    sum += sq.sum;
    cells += sq.cells;
    report.items.push_back(item);
  }
  if (report.items.empty()) {
    throw Error(ErrorCode::kEmptyOverlap, "the two groups share no answered item");
  }
  report.score = std::clamp(std::sqrt(sum / static_cast<double>(cells)), 0.0, 1.0);
  return report;
}

double random_baseline(DimensionName name) {
  const Dimension& d = dimension(name);
  const double k = static_cast<double>(d.size());
  if (d.kind == DimensionKind::nominal) return std::sqrt(2.0 * (k - 1.0)) / k;
  return std::sqrt((k + 1.0) / (6.0 * (k - 1.0)));
}

std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound) {
  // Largest multiple of bound that fits, then reject the tail.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const auto x = rng();
    if (x < limit) return x % bound;
  }
}

double random_baseline(DimensionName name, const MonteCarlo& mc) {
  if (mc.trials < 1) throw Error(ErrorCode::kInvalidTrials, "Monte Carlo needs at least one trial");
  const Dimension& d = dimension(name);
  std::mt19937_64 rng(mc.seed);
  double sum = 0;
  std::size_t cells = 0;
  std::array<std::string, 1> a, b;
  for (std::size_t t = 0; t < mc.trials; ++t) {
    a[0] = d.categories[bounded_random(rng, d.size())];
    b[0] = d.categories[bounded_random(rng, d.size())];
    const auto sq = item_squared(a, b, d);
    sum += sq.sum;
    cells += sq.cells;
  }
  return std::sqrt(sum / static_cast<double>(cells));
}

// ---------------------------------------------------------------------------

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences,
                                    WilcoxonMethod method) {
  constexpr double kEps = 1e-12;
  WilcoxonResult result;
  std::vector<double> nonzero;
  for (double d : differences) {
    if (std::abs(d) <= kEps) {
      ++result.zerosDropped;
    } else {
      nonzero.push_back(d);
    }
  }
  const std::size_t n = nonzero.size();
  if (n == 0) {
    throw Error(ErrorCode::kAllZeroDifferences,
                "all differences are zero; the signed-rank test is undefined");
  }
  result.n = n;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(nonzero[i]) < std::abs(nonzero[j]);
  });

  // Doubled ranks keep average ranks integral.
  std::vector<long long> rank2(n);
  double tie_term = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    const double v = std::abs(nonzero[order[i]]);
    while (j < n && std::abs(std::abs(nonzero[order[j]]) - v) <= kEps * std::max(1.0, v)) ++j;
    const long long r2 = static_cast<long long>(i + 1 + j);  // 2 * average of i+1..j
    for (std::size_t t = i; t < j; ++t) rank2[order[t]] = r2;
    const double tied = static_cast<double>(j - i);
    tie_term += tied * tied * tied - tied;
    i = j;
  }

  long long w2 = 0, total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (nonzero[i] > 0) w2 += rank2[i];
  }
  result.W = static_cast<double>(w2) / 2.0;

  if (method == WilcoxonMethod::automatic) {
    method = n <= kWilcoxonExactLimit ? WilcoxonMethod::exact : WilcoxonMethod::approximate;
  }
  result.method = method;

  if (method == WilcoxonMethod::exact) {
    // Number of sign assignments reaching each doubled positive-rank sum.
    std::vector<double> ways(static_cast<std::size_t>(total2) + 1, 0.0);
    ways[0] = 1.0;
    long long reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      reach += rank2[i];
      for (long long s = reach; s >= rank2[i]; --s) {
        ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - rank2[i])];
      }
    }
    // Compare |2s - total2| >= |2w2 - total2| in integers.
    const long long observed = std::llabs(2 * w2 - total2);
    double extreme = 0, all = 0;
    for (long long s = 0; s <= total2; ++s) {
      const double c = ways[static_cast<std::size_t>(s)];
      all += c;
      if (std::llabs(2 * s - total2) >= observed) extreme += c;
    }
    result.p = std::min(1.0, extreme / all);
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mean = static_cast<double>(total2) / 4.0;
  const double variance = nn * (nn + 1) * (2 * nn + 1) / 24.0 - tie_term / 48.0;
  const double deviation = std::max(0.0, std::abs(result.W - mean) - 0.5);
  const double z = variance > 0 ? deviation / std::sqrt(variance) : 0.0;
  double p = std::erfc(z / std::sqrt(2.0));
  if (variance > 0) {
    // Edgeworth term for the (negative) excess kurtosis of W; the fourth
    // cumulant of a half-probability sign times rank r is -r^4/8.
    double k4 = 0;
    for (const auto r2 : rank2) {
      const double r = static_cast<double>(r2) / 2.0;
      k4 -= r * r * r * r / 8.0;
    }
    const double g2 = k4 / (variance * variance);
    const double density = std::exp(-z * z / 2) / std::sqrt(2 * std::numbers::pi);
    const double corrected = p + 2 * density * g2 / 24.0 * (z * z * z - 3 * z);
    if (corrected > 0) p = corrected;
  }
  result.p = std::min(1.0, p);
  return result;
}

// ---------------------------------------------------------------------------

std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = bounded_random(rng, i);
    std::swap(items[i - 1], items[j]);
  }
  return items;
}

SubgroupReport subgroup_analysis(const RaterResponses& peers, const GroupResponses& reference,
                                 DimensionName dim, std::size_t group_size,
                                 std::uint64_t seed) {
  if (group_size < 1) throw Error(ErrorCode::kInvalidArgument, "group size must be >= 1");
  if (peers.size() < group_size) {
    throw Error(ErrorCode::kTooFewRaters, std::to_string(peers.size()) +
                                              " raters cannot fill a group of " +
                                              std::to_string(group_size));
  }
  std::vector<std::string> raters;
  for (const auto& entry : peers) raters.push_back(entry.first);
  raters = seeded_shuffle(std::move(raters), seed);

  SubgroupReport report;
  report.dimension = dim;
  report.groupSize = group_size;
  report.seed = seed;
  const std::size_t n_groups = raters.size() / group_size;
  for (std::size_t g = 0; g < n_groups; ++g) {
    std::vector<std::string> members(raters.begin() + static_cast<std::ptrdiff_t>(g * group_size),
                                     raters.begin() + static_cast<std::ptrdiff_t>((g + 1) * group_size));
    GroupResponses responses;
    for (const auto& rater : members) {
      for (const auto& [item, answer] : peers.at(rater)) responses[item].push_back(answer);
    }
    auto r = disagreement_score(responses, reference, dim);
    r.groupA = "group-" + std::to_string(g + 1);
    r.groupB = "reference";
    report.groups.push_back(std::move(r));
    report.members.push_back(std::move(members));
  }
  report.droppedRaters.assign(raters.begin() + static_cast<std::ptrdiff_t>(n_groups * group_size),
                              raters.end());

  double sum = 0;
  for (const auto& g : report.groups) sum += g.score;
  report.meanScore = sum / static_cast<double>(n_groups);
  double var = 0;
  for (const auto& g : report.groups) var += (g.score - report.meanScore) * (g.score - report.meanScore);
  report.stdDev = std::sqrt(var / static_cast<double>(n_groups));
  return report;
}

// ---------------------------------------------------------------------------

namespace {

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::vector<CategoryShare> shares(const std::vector<std::string>& categories,
                                  const std::vector<std::size_t>& counts, std::size_t total) {
  std::vector<CategoryShare> out;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    out.push_back({categories[i], counts[i], percent(counts[i], total)});
  }
  return out;
}

}  // namespace

std::vector<CategoryShare> granularity_shares(std::span<const GranularityLevel> levels) {
  if (levels.empty()) throw Error(ErrorCode::kEmptyStore, "no review comments to report on");
  std::vector<std::size_t> counts(3, 0);
  for (auto l : levels) ++counts[static_cast<std::size_t>(l)];
  return shares({"article", "section", "paragraph"}, counts, levels.size());
}

DistributionReport distribution_report(const StoreView& view) {
  std::vector<GranularityLevel> levels;
  std::vector<const ReviewComment*> comments;
  for (const auto* node : view.all()) {
    const auto* c = std::get_if<ReviewComment>(node);
    if (!c) continue;
    comments.push_back(c);
    if (const auto* target = view.find(c->refersTo)) {
      if (const auto* s = std::get_if<SnippetNode>(target)) levels.push_back(s->level);
    }
  }
  if (comments.empty()) throw Error(ErrorCode::kEmptyStore, "store holds no review comments");

  DistributionReport report;
  report.totalComments = comments.size();
  report.granularity = granularity_shares(levels);

  auto tally = [&](DimensionName dim, auto category_of) {
    const Dimension& d = dimension(dim);
    std::vector<std::size_t> counts(d.size(), 0);
    std::size_t total = 0;
    for (const auto* c : comments) {
      if (auto cat = category_of(*c)) {
        ++counts[*d.index_of(*cat)];
        ++total;
      }
    }
    report.dimensions[std::string(to_string(dim))] = shares(d.categories, counts, total);
  };
  tally(DimensionName::aspect, [](const ReviewComment& c) -> std::optional<std::string> {
    if (!c.aspect) return std::nullopt;
    return std::string(linkflows::to_string(*c.aspect));
  });
  tally(DimensionName::polarity, [](const ReviewComment& c) -> std::optional<std::string> {
    if (!c.polarity) return std::nullopt;
    return std::string(linkflows::to_string(*c.polarity));
  });
  tally(DimensionName::actionNeeded, [](const ReviewComment& c) -> std::optional<std::string> {
    if (!c.actionNeeded) return std::nullopt;
    return std::string(linkflows::to_string(*c.actionNeeded));
  });
  tally(DimensionName::impact, [](const ReviewComment& c) -> std::optional<std::string> {
    if (!c.impact || !c.impact->valid()) return std::nullopt;
    return std::to_string(c.impact->value());
  });
  return report;
}

NoAnswerReport no_answer_report(std::span<const AnnotationRecord> records) {
  NoAnswerReport report;
  for (auto d : kAllDimensions) report.perDimension[d] = {};
  auto count = [](NoAnswerRow& row, const AnnotationRecord& r) {
    ++row.records;
    if (const auto* c = std::get_if<CannotAnswer>(&r.answer)) {
      if (*c == CannotAnswer::moreContextNeeded) {
        ++row.moreContextNeeded;
      } else {
        ++row.confusing;
      }
    }
  };
  for (const auto& r : records) {
    count(report.perDimension[r.dimension], r);
    count(report.overall, r);
  }
  auto finish = [](NoAnswerRow& row) {
    row.pctMoreContext = percent(row.moreContextNeeded, row.records);
    row.pctConfusing = percent(row.confusing, row.records);
    row.pctTotal = percent(row.moreContextNeeded + row.confusing, row.records);
  };
  for (auto& [dim, row] : report.perDimension) finish(row);
  finish(report.overall);
  return report;
}

AccuracyReport classifier_accuracy(const std::map<std::string, std::string>& predictions,
                                   const std::map<std::string, std::string>& ground_truth) {
  AccuracyReport report;
  for (const auto& [item, truth] : ground_truth) {
    auto it = predictions.find(item);
    if (it == predictions.end()) continue;
    ++report.items;
    if (it->second == truth) ++report.correct;
  }
  if (report.items == 0) {
    throw Error(ErrorCode::kEmptyOverlap, "predictions and ground truth share no item");
  }
  report.accuracy = static_cast<double>(report.correct) / static_cast<double>(report.items);
  return report;
}

}  // namespace linkflows::analytics
