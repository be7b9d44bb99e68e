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

// Agreement and disagreement statistics over classification answers.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linkflows/errors.hpp"
#include "linkflows/model.hpp"

namespace linkflows::analytics {

enum class DimensionName { aspect, polarity, actionNeeded, impact, actionTaken };
enum class DimensionKind { nominal, ordinal };

struct Dimension {
  DimensionName name;
  DimensionKind kind;
  std::vector<std::string> categories;
  // Equally spaced on [0, 1]; only meaningful for ordinal dimensions.
  std::vector<double> normalizedValues;

  std::optional<std::size_t> index_of(std::string_view category) const;
  std::size_t size() const { return categories.size(); }
};

inline constexpr std::array<DimensionName, 5> kAllDimensions{
    DimensionName::aspect, DimensionName::polarity, DimensionName::actionNeeded,
    DimensionName::impact, DimensionName::actionTaken};

const Dimension& dimension(DimensionName name);
std::string_view to_string(DimensionName name);
// Throws Error(kUnknownDimension).
DimensionName parse_dimension(std::string_view name);

enum class RaterGroup { reviewer, modelExperts, peers, tool };
enum class CannotAnswer { moreContextNeeded, confusing };

std::string_view to_string(RaterGroup g);
std::optional<RaterGroup> parse_rater_group(std::string_view s);
std::string_view to_string(CannotAnswer c);
std::optional<CannotAnswer> parse_cannot_answer(std::string_view s);

struct AnnotationRecord {
  std::string rater;
  RaterGroup group = RaterGroup::peers;
  std::string item;
  DimensionName dimension = DimensionName::aspect;
  std::variant<std::string, CannotAnswer> answer;

  bool substantive() const { return std::holds_alternative<std::string>(answer); }
  bool operator==(const AnnotationRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Fleiss' kappa

struct KappaReport {
  DimensionName dimension = DimensionName::aspect;
  std::size_t nItems = 0;
  std::size_t nRatersPerItem = 0;
  double PbarObserved = 0;
  double PeExpected = 0;
  // Undefined when every rating falls into one category (P_e = 1).
  std::optional<double> kappa;
  std::string note;
};

// `counts[i][c]` = raters placing item i in category c. Every row must sum
// to n_raters_per_item (>= 2). Throws kInvalidArgument / kUnequalRaterCounts.
KappaReport fleiss_kappa(const std::vector<std::vector<int>>& counts,
                         std::size_t n_raters_per_item,
                         DimensionName dimension = DimensionName::aspect);

// ---------------------------------------------------------------------------
// Group disagreement

// item -> substantive answers of the group (category labels).
using GroupResponses = std::map<std::string, std::vector<std::string>>;
// rater -> item -> answer.
using RaterResponses = std::map<std::string, std::map<std::string, std::string>>;

struct DisagreementReport {
  DimensionName dimension = DimensionName::aspect;
  std::string groupA;
  std::string groupB;
  std::vector<std::string> items;
  double score = 0;
  std::size_t excludedCannotAnswer = 0;
};

// Ordinal: root mean square over shared items of the difference between
// within-group mean normalized answers. Nominal: root mean square over
// (item, category) cells of the difference between within-group category
// ratios. Throws kEmptyOverlap, or kInvalidArgument on unknown categories.
DisagreementReport disagreement_score(const GroupResponses& a, const GroupResponses& b,
                                      DimensionName dimension);

// Per-item score (same formula restricted to one item).
double item_disagreement(std::span<const std::string> a, std::span<const std::string> b,
                         const Dimension& dimension);

struct MonteCarlo {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

// Expected disagreement of two uncorrelated, uniformly random single raters:
// sqrt(2(k-1))/k for k nominal categories, sqrt((m+1)/(6(m-1))) for m ordinal
// levels.
double random_baseline(DimensionName dimension);
// Simulated estimate; throws kInvalidTrials when trials < 1.
double random_baseline(DimensionName dimension, const MonteCarlo& mc);

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank

enum class WilcoxonMethod { automatic, exact, approximate };

struct WilcoxonResult {
  double W = 0;  // sum of ranks of positive differences
  double p = 1;  // two-tailed
  WilcoxonMethod method = WilcoxonMethod::exact;
  std::size_t n = 0;  // nonzero differences
  std::size_t zerosDropped = 0;
};

// Zeros are dropped, tied magnitudes get average ranks. `automatic` uses the
// exact null distribution for n <= 20 and the tie-corrected normal
// approximation above, with continuity correction and a kurtosis
// (Edgeworth) term. Throws kAllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

inline constexpr std::size_t kWilcoxonExactLimit = 20;

// ---------------------------------------------------------------------------
// Subgroups

struct SubgroupReport {
  DimensionName dimension = DimensionName::aspect;
  std::size_t groupSize = 0;
  std::uint64_t seed = 0;
  double meanScore = 0;
  double stdDev = 0;  // population
  std::vector<std::vector<std::string>> members;
  std::vector<DisagreementReport> groups;
  std::vector<std::string> droppedRaters;
};

// Seeded shuffle of the raters (sorted by id first), consecutive groups of
// `group_size`, remainder dropped. Throws kTooFewRaters / kInvalidArgument.
SubgroupReport subgroup_analysis(const RaterResponses& peers, const GroupResponses& reference,
                                 DimensionName dimension, std::size_t group_size,
                                 std::uint64_t seed);

// Fisher-Yates with rejection sampling on mt19937_64, so the permutation is
// identical across standard libraries.
std::vector<std::string> seeded_shuffle(std::vector<std::string> items, std::uint64_t seed);
std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t bound);

// ---------------------------------------------------------------------------
// Descriptive reports

struct CategoryShare {
  std::string category;
  std::size_t count = 0;
  double percent = 0;
};

struct DistributionReport {
  std::size_t totalComments = 0;
  std::vector<CategoryShare> granularity;  // article, section, paragraph
  std::map<std::string, std::vector<CategoryShare>> dimensions;
};

// Shares of review comments per target level. Throws kEmptyStore.
std::vector<CategoryShare> granularity_shares(std::span<const GranularityLevel> levels);
DistributionReport distribution_report(const StoreView& view);

struct NoAnswerRow {
  std::size_t records = 0;
  std::size_t moreContextNeeded = 0;
  std::size_t confusing = 0;
  double pctMoreContext = 0;
  double pctConfusing = 0;
  double pctTotal = 0;
};

struct NoAnswerReport {
  std::map<DimensionName, NoAnswerRow> perDimension;  // all five dimensions
  NoAnswerRow overall;
};

NoAnswerReport no_answer_report(std::span<const AnnotationRecord> records);

struct AccuracyReport {
  double accuracy = 0;
  std::size_t items = 0;
  std::size_t correct = 0;
};

// Over the shared items. Throws kEmptyOverlap.
AccuracyReport classifier_accuracy(const std::map<std::string, std::string>& predictions,
                                   const std::map<std::string, std::string>& ground_truth);

}  // namespace linkflows::analytics
