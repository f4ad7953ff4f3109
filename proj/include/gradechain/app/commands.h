// Copyright 2026 The gradechain Authors
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

#ifndef GRADECHAIN_APP_COMMANDS_H
#define GRADECHAIN_APP_COMMANDS_H

#include <optional>
#include <string>
#include <vector>

#include "gradechain/app/config.h"
#include "json.hpp"

namespace gradechain::app {

inline constexpr const char *kReportSchema = "gradechain/1";

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2 };

struct CommandResult {
    nlohmann::ordered_json report;
    int exit_code = kExitPass;
};

/// {"exact": "...", "numeric": [re, im]}; the numeric part is omitted when
/// the scalar involves symbols.
nlohmann::ordered_json scalar_json(const ExactScalar &s);

/// Overrides the config seed of every audit when set.
struct RunOptions {
    std::optional<uint64_t> seed;
    std::optional<std::string> state;
    std::optional<std::string> check;
    std::optional<int> window;
    std::optional<bool> omit_site0;
};

CommandResult analyze_bicharacter(const ExperimentConfig &cfg);
/// Exit code 1 when some declared sample state admits no product state.
CommandResult product_exists(const ExperimentConfig &cfg);
/// Runs the config's audit list, or the requested state/check pair; with
/// neither, every declared state gets the rn audit.
CommandResult audit(const ExperimentConfig &cfg, const RunOptions &options = {});
CommandResult braid_verify(const ExperimentConfig &cfg);
CommandResult braid_obstruct(const ExperimentConfig &cfg, const RunOptions &options = {});

struct GoldenCheck {
    std::string name;
    bool pass;
    std::string detail;
};

/// Fixed battery of reference values for the built-in models.
std::vector<GoldenCheck> golden_checks();
CommandResult selftest();

/// Indented plain-text rendering of a report.
std::string render_text(const nlohmann::ordered_json &report);

}  // namespace gradechain::app

#endif
