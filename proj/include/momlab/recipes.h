// Copyright 2026 The momlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOMLAB_RECIPES_H
#define MOMLAB_RECIPES_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "momlab/analysis.h"
#include "momlab/runner.h"

namespace momlab {

enum class Budget { kSmall, kMedium, kPaper };

Budget parse_budget(std::string_view text);
const char *budget_name(Budget b);

/// Canned run specs for one figure. Each run carries a label that is added
/// to its records as the "run" param.
struct Recipe {
    std::string figure;
    Budget budget = Budget::kSmall;
    std::vector<std::pair<std::string, RunSpec>> runs;
};

/// Figure ids: fig2, fig3, fig4, fig5c, fig8, fig9, fig10, fig11.
const std::vector<std::string> &recipe_names();

/// Throws std::invalid_argument for unknown figure ids.
Recipe make_recipe(const std::string &figure, Budget budget);

/// Runs every spec of the recipe, labels the records, and returns them in
/// run order.
std::vector<TrajectoryRecord> run_recipe(const Recipe &recipe, size_t workers);

/// Figure-specific fits on the recipe's records. Fit entries use the fit
/// report layout {estimate, stderr, window, n_boot, ...}.
nlohmann::json analyze_recipe(const Recipe &recipe, const std::vector<TrajectoryRecord> &records);

nlohmann::json fit_report_json(const FitReport &report);

}  // namespace momlab

#endif
