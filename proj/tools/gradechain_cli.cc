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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gradechain/app/commands.h"
#include "gradechain/error.h"

using namespace gradechain;
using namespace gradechain::app;

namespace {

struct Common {
    std::string config;
    bool json = false;
    std::optional<uint64_t> seed;
    std::string out;
};

void add_common(CLI::App *cmd, Common &c, bool needs_config) {
    auto *opt = cmd->add_option("--config", c.config, "Experiment file (YAML, or JSON by extension)");
    if (needs_config) {
        opt->required()->check(CLI::ExistingFile);
    }
    cmd->add_flag("--json", c.json, "Emit the JSON report instead of text");
    cmd->add_option("--seed", c.seed, "Override the audit seed");
    cmd->add_option("--out", c.out, "Write the report here instead of stdout");
}

int emit(const CommandResult &res, const Common &c) {
    std::string body = c.json ? res.report.dump(2) + "\n" : render_text(res.report);
    if (c.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "error: cannot write " << c.out << "\n";
            return kExitConfig;
        }
        f << body;
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Twisted chains of graded algebras: symmetry audits and braid checks"};
    app.require_subcommand(1);
    Common common;
    RunOptions options;

    auto *analyze = app.add_subcommand("analyze-bicharacter", "Classify v, isotropy set, maximal isotropic subgroups");
    add_common(analyze, common, true);
    auto *product = app.add_subcommand("product-exists", "Product-state gate for each declared sample state");
    add_common(product, common, true);
    auto *audit_cmd = app.add_subcommand("audit", "Exchangeability, spreadability, stationarity audits");
    add_common(audit_cmd, common, true);
    audit_cmd->add_option("--state", options.state, "Audit only this state");
    audit_cmd->add_option("--check", options.check, "exchangeable | spreadable | stationary | rn")
        ->check(CLI::IsMember({"exchangeable", "spreadable", "stationary", "rn"}));
    auto *verify = app.add_subcommand("braid-verify", "Artin relations and braidability of the configured action");
    add_common(verify, common, true);
    auto *obstruct = app.add_subcommand("braid-obstruct", "Coefficient matching for sigma_1(u_1) on the torus pair");
    add_common(obstruct, common, true);
    obstruct->add_option("--window", options.window, "Highest site N of the candidate expansion")
        ->check(CLI::Range(0, 64));
    bool omit = false;
    obstruct->add_flag("--omit-site0", omit, "Drop the site-0 unknowns");
    auto *self = app.add_subcommand("selftest", "Reference values for the built-in models");
    add_common(self, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }
    if (omit) {
        options.omit_site0 = true;
    }
    options.seed = common.seed;

    try {
        if (self->parsed()) {
            return emit(selftest(), common);
        }
        ExperimentConfig cfg = load_config(common.config);
        if (analyze->parsed()) {
            return emit(analyze_bicharacter(cfg), common);
        }
        if (product->parsed()) {
            return emit(product_exists(cfg), common);
        }
        if (audit_cmd->parsed()) {
            return emit(audit(cfg, options), common);
        }
        if (verify->parsed()) {
            return emit(braid_verify(cfg), common);
        }
        return emit(braid_obstruct(cfg, options), common);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}
