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

#include "linkflows/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "linkflows/annotations.hpp"

namespace linkflows::reports {

using nlohmann::json;
using namespace linkflows::analytics;

namespace {

[[noreturn]] void bad_param(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

const std::string* find(const Params& p, const char* key) {
  auto it = p.find(key);
  return it == p.end() || it->second.empty() ? nullptr : &it->second;
}

const std::string& required(const Params& p, const char* key) {
  const auto* v = find(p, key);
  if (!v) bad_param(std::string("missing parameter '") + key + "'");
  return *v;
}

std::string optional(const Params& p, const char* key, std::string fallback) {
  const auto* v = find(p, key);
  return v ? *v : fallback;
}

template <typename T>
T number(const std::string& text, const char* key) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    bad_param(std::string("parameter '") + key + "' is not a valid number: " + text);
  }
  return value;
}

std::vector<double> number_list(const std::string& text, const char* key) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(number<double>(text.substr(start, comma - start), key));
    start = comma + 1;
  }
  return out;
}

const std::vector<AnnotationRecord>& annotations(const Context& ctx) {
  if (!ctx.annotations) {
    throw Error(ErrorCode::kEmptyInput, "this report needs annotation records (--annotations)");
  }
  return *ctx.annotations;
}

// Most frequent answer; ties go to the earlier category.
std::string consensus(const std::vector<std::string>& answers, const Dimension& d) {
  std::vector<std::size_t> counts(d.size(), 0);
  for (const auto& a : answers) ++counts[*d.index_of(a)];
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return d.categories[best];
}

json share_list(const std::vector<CategoryShare>& shares) {
  json out = json::array();
  for (const auto& s : shares) {
    out.push_back({{"category", s.category}, {"count", s.count}, {"percent", s.percent}});
  }
  return out;
}

json no_answer_row(const NoAnswerRow& row) {
  return {{"records", row.records},
          {"moreContextNeeded", row.moreContextNeeded},
          {"confusing", row.confusing},
          {"pctMoreContextNeeded", row.pctMoreContext},
          {"pctConfusing", row.pctConfusing},
          {"pctTotal", row.pctTotal}};
}

json disagreement_json(const DisagreementReport& r) {
  return {{"groupA", r.groupA},
          {"groupB", r.groupB},
          {"score", r.score},
          {"items", r.items.size()},
          {"excludedCannotAnswer", r.excludedCannotAnswer}};
}

json census(const Context& ctx) {
  json c = json::object();
  if (ctx.annotations) c["annotationRecords"] = ctx.annotations->size();
  return c;
}

// ---------------------------------------------------------------------------

json distribution(const Params&, const Context& ctx) {
  if (!ctx.store) throw Error(ErrorCode::kEmptyInput, "this report needs a store (--store)");
  const auto report = distribution_report(*ctx.store);
  std::map<std::string, std::size_t> kinds;
  for (auto k : {NodeKind::snippet, NodeKind::reviewComment, NodeKind::responseComment,
                 NodeKind::actionCheckComment, NodeKind::agent}) {
    kinds[std::string(to_string(k))] = 0;
  }
  for (const auto* node : ctx.store->all()) ++kinds[std::string(to_string(kind_of(*node)))];

  json out{{"metric", "distribution"}, {"census", {{"nodes", kinds}, {"reviewComments", report.totalComments}}}};
  out["granularity"] = share_list(report.granularity);
  out["dimensions"] = json::object();
  for (const auto& [dim, shares] : report.dimensions) out["dimensions"][dim] = share_list(shares);
  return out;
}

json kappa(const Params& p, const Context& ctx) {
  const auto& records = annotations(ctx);
  const auto selector = parse_group_selector(optional(p, "group", "modelExperts"));
  std::vector<DimensionName> dims;
  if (const auto* d = find(p, "dimension")) {
    dims.push_back(parse_dimension(*d));
  } else {
    for (auto d : kAllDimensions) {
      if (select(records, selector, d).records > 0) dims.push_back(d);
    }
  }

  json out{{"metric", "kappa"}, {"group", selector.str()}, {"census", census(ctx)}};
  out["dimensions"] = json::array();
  double sum = 0;
  std::size_t defined = 0;
  for (auto d : dims) {
    const auto input = kappa_input(records, selector, d);
    if (input.counts.empty() || input.nRatersPerItem < 2) {
      throw Error(ErrorCode::kTooFewRaters, std::string("no ") + std::string(to_string(d)) +
                                                " items rated by at least two raters of " +
                                                selector.str());
    }
    const auto k = fleiss_kappa(input.counts, input.nRatersPerItem, d);
    json row{{"dimension", to_string(d)},
             {"kappa", k.kappa ? json(*k.kappa) : json(nullptr)},
             {"PbarObserved", k.PbarObserved},
             {"PeExpected", k.PeExpected},
             {"nItems", k.nItems},
             {"nRatersPerItem", k.nRatersPerItem},
             {"itemsDropped", input.itemsDropped},
             {"excludedCannotAnswer", input.excludedCannotAnswer}};
    if (!k.note.empty()) row["note"] = k.note;
    out["dimensions"].push_back(std::move(row));
    if (k.kappa) {
      sum += *k.kappa;
      ++defined;
    }
  }
  out["overall"] = defined ? json(sum / static_cast<double>(defined)) : json(nullptr);
  return out;
}

DisagreementReport group_disagreement(const std::vector<AnnotationRecord>& records,
                                      const GroupSelector& a, const GroupSelector& b,
                                      DimensionName d) {
  const auto sa = select(records, a, d);
  const auto sb = select(records, b, d);
  auto r = disagreement_score(sa.responses, sb.responses, d);
  r.groupA = a.str();
  r.groupB = b.str();
  r.excludedCannotAnswer = sa.excludedCannotAnswer + sb.excludedCannotAnswer;
  return r;
}

json disagreement(const Params& p, const Context& ctx) {
  const auto& records = annotations(ctx);
  const auto d = parse_dimension(required(p, "dimension"));
  const auto a = parse_group_selector(required(p, "groupA"));
  const auto b = parse_group_selector(required(p, "groupB"));
  json out{{"metric", "disagreement"}, {"dimension", to_string(d)}, {"census", census(ctx)}};
  out.update(disagreement_json(group_disagreement(records, a, b, d)));
  out["randomBaseline"] = random_baseline(d);
  return out;
}

json baseline(const Params& p, const Context&) {
  const auto d = parse_dimension(required(p, "dimension"));
  json out{{"metric", "baseline"},
           {"dimension", to_string(d)},
           {"kind", dimension(d).kind == DimensionKind::nominal ? "nominal" : "ordinal"},
           {"categories", dimension(d).size()},
           {"value", random_baseline(d)}};
  if (const auto* t = find(p, "trials")) {
    MonteCarlo mc;
    const auto trials = number<long long>(*t, "trials");
    if (trials < 1) throw Error(ErrorCode::kInvalidTrials, "trials must be >= 1");
    mc.trials = static_cast<std::size_t>(trials);
    mc.seed = number<std::uint64_t>(optional(p, "seed", "1"), "seed");
    out["monteCarlo"] = {{"trials", mc.trials}, {"seed", mc.seed}, {"estimate", random_baseline(d, mc)}};
  }
  return out;
}

json subgroups(const Params& p, const Context& ctx) {
  const auto& records = annotations(ctx);
  const auto d = parse_dimension(required(p, "dimension"));
  const auto size = number<std::size_t>(required(p, "size"), "size");
  const auto seed = number<std::uint64_t>(optional(p, "seed", "1"), "seed");
  const auto group = parse_group_selector(optional(p, "group", "peers"));
  const auto reference = parse_group_selector(optional(p, "reference", "reviewer"));

  const auto peers = select(records, group, d);
  const auto ref = select(records, reference, d);
  const auto report = subgroup_analysis(peers.perRater, ref.responses, d, size, seed);

  json out{{"metric", "subgroups"},  {"dimension", to_string(d)},  {"group", group.str()},
           {"reference", reference.str()}, {"size", size}, {"seed", seed},
           {"census", census(ctx)}, {"meanScore", report.meanScore}, {"stdDev", report.stdDev},
           {"excludedCannotAnswer", peers.excludedCannotAnswer + ref.excludedCannotAnswer},
           {"droppedRaters", report.droppedRaters}};
  out["groups"] = json::array();
  for (std::size_t i = 0; i < report.groups.size(); ++i) {
    auto g = disagreement_json(report.groups[i]);
    g["members"] = report.members[i];
    out["groups"].push_back(std::move(g));
  }
  return out;
}

WilcoxonMethod parse_method(const std::string& s) {
  if (s == "auto" || s == "automatic") return WilcoxonMethod::automatic;
  if (s == "exact") return WilcoxonMethod::exact;
  if (s == "approximate" || s == "approx") return WilcoxonMethod::approximate;
  bad_param("parameter 'method' must be auto, exact or approximate");
}

json wilcoxon(const Params& p, const Context& ctx) {
  const auto method = parse_method(optional(p, "method", "auto"));
  std::vector<double> diffs;
  json out{{"metric", "wilcoxon"}};
  if (const auto* list = find(p, "differences")) {
    diffs = number_list(*list, "differences");
    out["source"] = "differences";
  } else {
    const auto& records = annotations(ctx);
    const auto d = parse_dimension(required(p, "dimension"));
    const auto a = parse_group_selector(required(p, "groupA"));
    const auto b = parse_group_selector(required(p, "groupB"));
    const auto r = parse_group_selector(optional(p, "reference", "reviewer"));
    const auto sa = select(records, a, d), sb = select(records, b, d), sr = select(records, r, d);
    const Dimension& dim = dimension(d);
    for (const auto& [item, ref] : sr.responses) {
      auto ia = sa.responses.find(item), ib = sb.responses.find(item);
      if (ia == sa.responses.end() || ib == sb.responses.end()) continue;
      diffs.push_back(item_disagreement(ia->second, ref, dim) - item_disagreement(ib->second, ref, dim));
    }
    if (diffs.empty()) throw Error(ErrorCode::kEmptyOverlap, "no item answered by all three groups");
    out.update({{"dimension", to_string(d)}, {"groupA", a.str()}, {"groupB", b.str()},
                {"reference", r.str()}, {"census", census(ctx)}});
    out["source"] = "per-item disagreement with the reference, groupA minus groupB";
  }
  const auto result = wilcoxon_signed_rank(diffs, method);
  out.update({{"W", result.W},
              {"p", result.p},
              {"method", result.method == WilcoxonMethod::exact ? "exact" : "approximate"},
              {"n", result.n},
              {"zerosDropped", result.zerosDropped},
              {"tails", 2}});
  return out;
}

json accuracy(const Params& p, const Context& ctx) {
  const auto& records = annotations(ctx);
  const auto d = parse_dimension(optional(p, "dimension", "polarity"));
  const auto predicted_sel = parse_group_selector(required(p, "predicted"));
  const auto truth_sel = parse_group_selector(optional(p, "truth", "reviewer"));
  const Dimension& dim = dimension(d);

  auto by_item = [&](const GroupSelector& s, std::size_t& excluded) {
    const auto sel = select(records, s, d);
    excluded += sel.excludedCannotAnswer;
    std::map<std::string, std::string> out;
    for (const auto& [item, answers] : sel.responses) out[item] = consensus(answers, dim);
    return out;
  };
  std::size_t excluded = 0;
  const auto predicted = by_item(predicted_sel, excluded);
  const auto truth = by_item(truth_sel, excluded);
  const auto r = classifier_accuracy(predicted, truth);
  return {{"metric", "accuracy"},   {"dimension", to_string(d)},
          {"predicted", predicted_sel.str()}, {"truth", truth_sel.str()},
          {"census", census(ctx)},  {"accuracy", r.accuracy},
          {"items", r.items},       {"correct", r.correct},
          {"excludedCannotAnswer", excluded}};
}

json no_answer(const Params&, const Context& ctx) {
  const auto& records = annotations(ctx);
  const auto report = no_answer_report(records);
  json out{{"metric", "no-answer"}, {"census", census(ctx)}, {"dimensions", json::object()}};
  for (const auto& [d, row] : report.perDimension) {
    out["dimensions"][std::string(to_string(d))] = no_answer_row(row);
  }
  out["overall"] = no_answer_row(report.overall);
  return out;
}

using Runner = json (*)(const Params&, const Context&);

const std::map<std::string, Runner, std::less<>>& runners() {
  static const std::map<std::string, Runner, std::less<>> kRunners{
      {"accuracy", accuracy},   {"baseline", baseline},   {"disagreement", disagreement},
      {"distribution", distribution}, {"kappa", kappa},   {"no-answer", no_answer},
      {"subgroups", subgroups}, {"wilcoxon", wilcoxon},
  };
  return kRunners;
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    if (j.empty()) {
      out += prefix + "\t\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  std::string value;
  if (j.is_null()) {
    value = "undefined";
  } else if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", j.get<double>());
    value = buf;
  } else if (j.is_string()) {
    value = j.get<std::string>();
  } else {
    value = j.dump();
  }
  out += prefix + "\t" + value + "\n";
}

}  // namespace

const std::vector<std::string>& metrics() {
  static const std::vector<std::string> kMetrics = [] {
    std::vector<std::string> m;
    for (const auto& [name, run] : runners()) m.push_back(name);
    return m;
  }();
  return kMetrics;
}

json run_analysis(std::string_view metric, const Params& params, const Context& ctx) {
  auto it = runners().find(metric);
  if (it == runners().end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(metric) + "'");
  }
  return it->second(params, ctx);
}

std::string render_table(const json& report) {
  std::string out;
  flatten(report, "", out);
  return out;
}

}  // namespace linkflows::reports
