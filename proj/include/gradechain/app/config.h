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

#ifndef GRADECHAIN_APP_CONFIG_H
#define GRADECHAIN_APP_CONFIG_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradechain/braid.h"
#include "gradechain/states.h"
#include "json.hpp"

namespace gradechain::app {

/// Anything wrong with a configuration file: syntax, schema, unknown names,
/// or a library error raised while building the declared objects.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct NamedSampleState {
    std::string name;
    SampleState state;
};

struct NamedChainState {
    std::string name;
    ChainState state;
};

struct AuditRequest {
    std::string state;
    /// "exchangeable", "spreadable", "stationary" or "rn".
    std::string check;
    int64_t shift = 1;
};

struct BraidImage {
    int generator;
    int64_t site;
    size_t letter;
    std::string image;
};

struct BraidConfig {
    /// "torus", "transposition", "identity" or "table".
    std::string action = "torus";
    int window = 4;
    int degree = 3;
    std::string state;
    std::optional<Phase> phase;
    std::vector<BraidImage> images;
};

struct ObstructionConfig {
    int window = 5;
    bool omit_site0 = false;
    std::string theta = "theta";
    std::string alpha = "alpha";
};

struct ExperimentConfig {
    std::string name;
    SymbolTablePtr symbols;
    DegreeGroup group;
    std::optional<Bicharacter> bicharacter;
    SampleAlgebraPtr sample;
    ChainContextPtr chain;
    std::vector<NamedSampleState> sample_states;
    std::vector<NamedChainState> states;
    AuditBudget budget;
    std::vector<AuditRequest> audits;
    std::optional<BraidConfig> braid;
    std::optional<ObstructionConfig> obstruction;

    const SampleState &sample_state(const std::string &name) const;
    const ChainState &state(const std::string &name) const;
};

/// YAML documents become the equivalent JSON tree; plain scalars that read
/// as integers or booleans are typed, everything else stays a string.
nlohmann::ordered_json yaml_to_json(const std::string &text);

/// Reads `path` as JSON when it ends in ".json" and as YAML otherwise.
nlohmann::ordered_json read_config_tree(const std::string &path);

ExperimentConfig parse_config(const nlohmann::ordered_json &tree);
ExperimentConfig load_config(const std::string &path);

}  // namespace gradechain::app

#endif
