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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "gradechain/app/commands.h"
#include "gradechain/app/config.h"

using namespace gradechain;
using namespace gradechain::app;
using json = nlohmann::ordered_json;

namespace {

std::string config_path(const std::string &name) {
    return std::string(GRADECHAIN_SOURCE_DIR) + "/configs/" + name;
}

std::filesystem::path scratch(const std::string &name, const std::string &text) {
    auto dir = std::filesystem::temp_directory_path() / "gradechain_app_test";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(GRADECHAIN_CLI) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(config, every_shipped_config_loads) {
    for (const auto &entry : std::filesystem::directory_iterator(std::string(GRADECHAIN_SOURCE_DIR) + "/configs")) {
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
    }
}

TEST(config, yaml_scalars_are_typed) {
    json t = yaml_to_json("a: 3\nb: \"3\"\nc: true\nd: 1/3\ne: [-2, x]\n");
    EXPECT_TRUE(t["a"].is_number_integer());
    EXPECT_TRUE(t["b"].is_string());
    EXPECT_TRUE(t["c"].is_boolean());
    EXPECT_EQ(t["d"], "1/3");
    EXPECT_EQ(t["e"][0], -2);
    EXPECT_EQ(t["e"][1], "x");
}

TEST(config, yaml_and_json_encodings_agree) {
    ExperimentConfig from_yaml = load_config(config_path("z3_squared.yaml"));
    json tree = read_config_tree(config_path("z3_squared.yaml"));
    auto as_json = scratch("z3.json", tree.dump());
    ExperimentConfig from_json = load_config(as_json.string());
    EXPECT_EQ(analyze_bicharacter(from_yaml).report.dump(), analyze_bicharacter(from_json).report.dump());
    EXPECT_EQ(audit(from_yaml).report.dump(), audit(from_json).report.dump());
}

TEST(config, schema_errors_name_the_path) {
    auto expect_error = [](const std::string &text, const std::string &fragment) {
        try {
            parse_config(yaml_to_json(text));
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ConfigError &e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_error("bogus: 1\n", "unknown key 'bogus'");
    expect_error("sample: {kind: parafermion}\n", "config.sample: missing key 'd'");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"1/3\", 0]]\n", "config.bicharacter[0]");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"beta\"]]\n", "config.bicharacter[0][0]");
    expect_error("group: {torsion_orders: [2]}\nsample: {kind: parafermion, d: 3}\n", "config.group");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"1/3\"]]\n"
                 "sample_states: [{name: t, trace: true}, {name: t, trace: true}]\n",
                 "duplicate name 't'");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"1/3\"]]\n"
                 "sample_states: [{name: t, trace: true}]\nstates: [{name: p, product: nope}]\n",
                 "unknown sample state 'nope'");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"1/3\"]]\n"
                 "sample_states: [{name: o, values: {\"0\": 1, \"1\": \"1/2\", \"2\": \"1/2\"}}]\n"
                 "states: [{name: p, product: o}]\n",
                 "config.states[0]");
    expect_error("sample: {kind: parafermion, d: 3}\nbicharacter: [[\"1/3\"]]\n"
                 "sample_states: [{name: t, trace: true}]\nstates: [{name: p, product: t}]\n"
                 "audits: [{state: p, check: sideways}]\n",
                 "unknown check 'sideways'");
    expect_error("audit: {samples: -1}\n", "config.audit.samples");
    expect_error("a: [\n", "YAML");
}

TEST(config, states_in_declaration_order) {
    ExperimentConfig cfg = load_config(config_path("car.yaml"));
    ASSERT_EQ(cfg.states.size(), 4u);
    EXPECT_EQ(cfg.states[0].name, "product_trace");
    EXPECT_EQ(cfg.states[2].name, "alternating");
    EXPECT_EQ(cfg.states[2].state.kind(), ChainState::Kind::Pinned);
    EXPECT_EQ(cfg.states[3].state.kind(), ChainState::Kind::Mixture);
    EXPECT_EQ(cfg.budget.seed, 11u);
    EXPECT_EQ(cfg.audits.size(), 3u);
}

TEST(commands, z3_squared_analysis) {
    json r = analyze_bicharacter(load_config(config_path("z3_squared.yaml"))).report;
    EXPECT_EQ(r["schema"], "gradechain/1");
    EXPECT_EQ(r["delta_v"]["elements"], json::array({"(0,0)", "(1,0)", "(1,1)", "(2,0)", "(2,2)"}));
    EXPECT_EQ(r["maximal_isotropic_subgroups"].size(), 2u);
    EXPECT_EQ(r["poulsen_condition"], false);
    EXPECT_EQ(r["h_abelian_sufficient"]["holds"], true);
}

TEST(commands, torus_rn_verdict) {
    CommandResult res = audit(load_config(config_path("torus.yaml")));
    EXPECT_EQ(res.exit_code, kExitPass);
    const json &a = res.report["audits"][0];
    EXPECT_EQ(a["verdict"], "spreadable ∧ ¬exchangeable");
    EXPECT_EQ(a["exchangeable"]["witnesses"][0]["monomial"], "i[1](u^1) i[2](u^1) i[1](u^-1) i[2](u^-1)");
    EXPECT_EQ(a["exchangeable"]["witnesses"][0]["value"]["exact"], "e(alpha)");
    EXPECT_FALSE(a["exchangeable"]["witnesses"][0]["value"].contains("numeric"));
}

TEST(commands, failing_checks_exit_one) {
    ExperimentConfig torus = load_config(config_path("torus.yaml"));
    RunOptions only_exchange;
    only_exchange.check = "exchangeable";
    EXPECT_EQ(audit(torus, only_exchange).exit_code, kExitFail);
    EXPECT_EQ(product_exists(load_config(config_path("car.yaml"))).exit_code, kExitFail);
    EXPECT_EQ(braid_obstruct(load_config(config_path("obstruction.yaml"))).exit_code, kExitFail);
    RunOptions empty;
    empty.window = 0;
    EXPECT_EQ(braid_obstruct(load_config(config_path("obstruction.yaml")), empty).exit_code, kExitPass);
}

TEST(commands, seed_override_changes_only_the_seed) {
    ExperimentConfig cfg = load_config(config_path("z3_squared.yaml"));
    RunOptions a, b;
    a.seed = 5;
    b.seed = 5;
    EXPECT_EQ(audit(cfg, a).report.dump(), audit(cfg, b).report.dump());
    EXPECT_EQ(audit(cfg, a).report["budget"]["seed"], 5);
}

TEST(commands, numeric_scalars) {
    json s = scalar_json(ExactScalar::unit(Phase(Rational(1, 4))));
    EXPECT_EQ(s["exact"], "e(1/4)");
    EXPECT_DOUBLE_EQ(s["numeric"][0].get<double>(), 0.0);
    EXPECT_DOUBLE_EQ(s["numeric"][1].get<double>(), 1.0);
}

TEST(commands, selftest_passes) {
    CommandResult res = selftest();
    EXPECT_EQ(res.exit_code, kExitPass);
    for (const auto &c : golden_checks()) {
        EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
    }
}

TEST(commands, text_rendering) {
    json r{{"schema", "gradechain/1"}, {"list", {1, 2}}, {"items", json::array({{{"a", 1}, {"b", "x"}}})},
           {"empty", json::object()}};
    EXPECT_EQ(render_text(r), "schema: gradechain/1\nlist: [1, 2]\nitems:\n  - a: 1\n    b: x\nempty: {}\n");
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run_cli("selftest"), 0);
    EXPECT_EQ(run_cli("analyze-bicharacter --config " + config_path("z3_squared.yaml")), 0);
    EXPECT_EQ(run_cli("braid-obstruct --config " + config_path("obstruction.yaml")), 1);
    EXPECT_EQ(run_cli("braid-obstruct --window 0 --config " + config_path("obstruction.yaml")), 0);
    EXPECT_EQ(run_cli("product-exists --config " + config_path("car.yaml")), 1);
    auto bad = scratch("bad.yaml", "sample: {kind: nowhere}\n");
    EXPECT_EQ(run_cli("audit --config " + bad.string()), 2);
    EXPECT_EQ(run_cli("audit --config /nonexistent.yaml"), 2);
    EXPECT_EQ(run_cli("no-such-command"), 2);
}

TEST(cli, reports_are_byte_identical) {
    auto dir = std::filesystem::temp_directory_path() / "gradechain_app_test";
    std::filesystem::create_directories(dir);
    for (const std::string cfg : {"car.yaml", "torus.yaml"}) {
        auto a = dir / ("a_" + cfg + ".json");
        auto b = dir / ("b_" + cfg + ".json");
        run_cli("audit --json --seed 9 --config " + config_path(cfg) + " --out " + a.string());
        run_cli("audit --json --seed 9 --config " + config_path(cfg) + " --out " + b.string());
        std::string first = read_file(a);
        EXPECT_FALSE(first.empty());
        EXPECT_EQ(first, read_file(b)) << cfg;
        EXPECT_EQ(json::parse(first)["schema"], "gradechain/1");
    }
}
