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

// One entry point for every analytics report, used verbatim by
// `linkflows analyze` and GET /api/analytics/{metric}, so both surfaces
// produce identical JSON.
//
// Metrics and parameters (all values are strings, as in a query string):
//   distribution                                   needs a store
//   kappa        [dimension] [group=modelExperts]  needs annotations
//   disagreement dimension groupA groupB           needs annotations
//   baseline     dimension [trials] [seed=1]
//   subgroups    dimension size [seed=1] [group=peers] [reference=reviewer]
//   wilcoxon     differences=d1,d2,...  or  dimension groupA groupB
//                [reference=reviewer]; [method=auto|exact|approximate]
//   accuracy     predicted [truth=reviewer] [dimension=polarity]
//   no-answer                                      needs annotations
//
// Group parameters take selectors such as "peers" or "tool/socal".

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "linkflows/analytics.hpp"
#include "linkflows/model.hpp"

namespace linkflows::reports {

using Params = std::map<std::string, std::string>;

struct Context {
  const StoreView* store = nullptr;
  const std::vector<analytics::AnnotationRecord>* annotations = nullptr;
};

const std::vector<std::string>& metrics();

// Throws Error(kInvalidArgument) for unknown metrics and missing or bad
// parameters, kEmptyInput when the needed input source is absent, and the
// analytics errors when a metric's preconditions fail.
nlohmann::json run_analysis(std::string_view metric, const Params& params, const Context& ctx);

// "key<TAB>value" lines; nested keys are dotted, array elements indexed.
// Numbers print with 4 decimals, null as "undefined".
std::string render_table(const nlohmann::json& report);

}  // namespace linkflows::reports
