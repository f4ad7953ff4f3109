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

#include "gradechain/app/commands.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "gradechain/error.h"
#include "gradechain/models.h"

namespace gradechain::app {

using json = nlohmann::ordered_json;

namespace {

constexpr size_t kReportedWitnesses = 8;

json header(const std::string &command, const ExperimentConfig *cfg) {
    json out;
    out["schema"] = kReportSchema;
    out["command"] = command;
    if (cfg && !cfg->name.empty()) {
        out["name"] = cfg->name;
    }
    return out;
}

json elements_json(const std::vector<Element> &elements) {
    json out = json::array();
    for (const auto &e : elements) {
        out.push_back(element_str(e));
    }
    return out;
}

json pair_json(const std::optional<std::pair<Element, Element>> &pair) {
    if (!pair) {
        return nullptr;
    }
    return json::array({element_str(pair->first), element_str(pair->second)});
}

json audit_json(const AuditReport &r) {
    json out;
    out["pass"] = r.pass;
    out["samples_run"] = r.samples_run;
    out["failures"] = r.failures;
    out["seed"] = r.seed;
    json ws = json::array();
    for (size_t i = 0; i < r.witnesses.size() && i < kReportedWitnesses; ++i) {
        const auto &w = r.witnesses[i];
        ws.push_back({{"monomial", w.monomial},
                      {"map", w.map},
                      {"value", scalar_json(w.value)},
                      {"mapped_value", scalar_json(w.mapped_value)}});
    }
    out["witnesses"] = ws;
    return out;
}

json section_json(const BraidSection &s) {
    return {{"name", s.name}, {"pass", s.pass}, {"checks", s.checks}, {"failures", s.failures}};
}

const ExperimentConfig &require_chain(const ExperimentConfig &cfg, const std::string &command) {
    if (!cfg.chain) {
        throw ConfigError(command + " needs a sample and a bicharacter");
    }
    return cfg;
}

BraidAction make_action(const ExperimentConfig &cfg, const BraidConfig &b) {
    if (b.action == "torus") {
        return build_torus_braid_action(cfg.chain, b.window, b.phase);
    }
    if (b.action == "transposition") {
        return transposition_braid_action(cfg.chain, b.window);
    }
    BraidAction rho(cfg.chain, b.window, b.action);
    for (const auto &img : b.images) {
        rho.set_image(img.generator, img.site, img.letter, parse_chain_element(cfg.chain, img.image));
    }
    rho.check_unitary();
    return rho;
}

void render(std::ostream &out, const json &node, int indent) {
    std::string pad(indent, ' ');
    auto inline_value = [](const json &v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    };
    auto is_flat = [](const json &v) {
        return v.is_array() && std::none_of(v.begin(), v.end(), [](const json &x) { return x.is_structured(); });
    };
    auto flat = [&](const json &v) {
        std::string joined;
        for (const auto &x : v) {
            joined += (joined.empty() ? "" : ", ") + inline_value(x);
        }
        return "[" + joined + "]";
    };
    if (node.is_object()) {
        for (const auto &[k, v] : node.items()) {
            if (!v.is_structured()) {
                out << pad << k << ": " << inline_value(v) << "\n";
            } else if (v.is_object() && v.empty()) {
                out << pad << k << ": {}\n";
            } else if (is_flat(v)) {
                out << pad << k << ": " << flat(v) << "\n";
            } else {
                out << pad << k << ":\n";
                render(out, v, indent + 2);
            }
        }
    } else if (node.is_array()) {
        for (const auto &v : node) {
            if (v.is_object() && !v.empty()) {
                std::ostringstream item;
                render(item, v, indent + 2);
                std::string text = item.str();
                text.replace(indent, 2, "- ");
                out << text;
            } else if (is_flat(v)) {
                out << pad << "- " << flat(v) << "\n";
            } else if (v.is_structured()) {
                out << pad << "-\n";
                render(out, v, indent + 2);
            } else {
                out << pad << "- " << inline_value(v) << "\n";
            }
        }
    } else {
        out << pad << inline_value(node) << "\n";
    }
}

}  // namespace

json scalar_json(const ExactScalar &s) {
    json out;
    out["exact"] = s.str();
    try {
        std::complex<double> z = scalar_eval(s, {});
        auto clean = [](double x) { return std::abs(x) < kNumericTolerance ? 0.0 : x; };
        out["numeric"] = json::array({clean(z.real()), clean(z.imag())});
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::MissingAssignment) {
            throw;
        }
    }
    return out;
}

CommandResult analyze_bicharacter(const ExperimentConfig &cfg) {
    if (!cfg.bicharacter) {
        throw ConfigError("analyze-bicharacter needs a bicharacter");
    }
    const Bicharacter &v = *cfg.bicharacter;
    CommandResult res{header("analyze-bicharacter", &cfg)};
    json &r = res.report;
    r["group"] = v.group().str();
    json matrix = json::array();
    for (const auto &row : v.matrix()) {
        json cells = json::array();
        for (const auto &p : row) {
            cells.push_back(p.str());
        }
        matrix.push_back(cells);
    }
    r["matrix"] = matrix;
    BicharClass cls = bichar_classify(v);
    r["classification"] = {{"symmetric", cls.symmetric}, {"antisymmetric", cls.antisymmetric}};
    if (v.group().free_rank() > 0) {
        r["finite"] = false;
        return res;
    }
    r["finite"] = true;
    IsotropySet delta = delta_v(v);
    r["delta_v"] = {{"elements", elements_json(delta.elements)}, {"is_subgroup", delta.is_subgroup}};
    json maximal = json::array();
    for (const auto &s : maximal_isotropic_subgroups(v)) {
        maximal.push_back({{"generators", s.str()}, {"elements", elements_json(s.elements())}});
    }
    r["maximal_isotropic_subgroups"] = maximal;
    PairVerdict h = h_abelian_sufficient(v);
    r["h_abelian_sufficient"] = {{"holds", h.holds}, {"witness", pair_json(h.witness)}};
    r["poulsen_condition"] = poulsen_condition(v);
    return res;
}

CommandResult product_exists(const ExperimentConfig &cfg) {
    if (!cfg.bicharacter || !cfg.sample) {
        throw ConfigError("product-exists needs a sample and a bicharacter");
    }
    if (cfg.sample_states.empty()) {
        throw ConfigError("product-exists needs at least one sample state");
    }
    CommandResult res{header("product-exists", &cfg)};
    json states = json::array();
    for (const auto &[name, omega] : cfg.sample_states) {
        ProductGate g = product_state_exists(omega, *cfg.bicharacter);
        std::set<Element> degrees = spectral_support(omega);
        std::vector<Element> support(degrees.begin(), degrees.end());
        states.push_back({{"name", name},
                          {"spectral_support", elements_json(support)},
                          {"exists", g.exists},
                          {"witness", pair_json(g.witness)}});
        if (!g.exists) {
            res.exit_code = kExitFail;
        }
    }
    res.report["states"] = states;
    res.report["pass"] = res.exit_code == kExitPass;
    return res;
}

CommandResult audit(const ExperimentConfig &cfg, const RunOptions &options) {
    require_chain(cfg, "audit");
    std::vector<AuditRequest> requests;
    if (options.state || options.check) {
        std::string check = options.check.value_or("rn");
        if (check != "exchangeable" && check != "spreadable" && check != "stationary" && check != "rn") {
            throw ConfigError("unknown check '" + check + "'");
        }
        if (options.state) {
            cfg.state(*options.state);
            requests.push_back({*options.state, check, 1});
        } else {
            for (const auto &s : cfg.states) {
                requests.push_back({s.name, check, 1});
            }
        }
    } else if (!cfg.audits.empty()) {
        requests = cfg.audits;
    } else {
        for (const auto &s : cfg.states) {
            requests.push_back({s.name, "rn", 1});
        }
    }
    if (requests.empty()) {
        throw ConfigError("audit needs at least one state");
    }
    AuditBudget budget = cfg.budget;
    if (options.seed) {
        budget.seed = *options.seed;
    }
    CommandResult res{header("audit", &cfg)};
    res.report["budget"] = {{"samples", budget.samples},
                            {"max_sites", budget.max_sites},
                            {"max_letters", budget.max_letters},
                            {"exponent_bound", budget.exponent_bound},
                            {"seed", budget.seed},
                            {"canonical", budget.canonical}};
    json out = json::array();
    for (const auto &req : requests) {
        const ChainState &phi = cfg.state(req.state);
        json entry{{"state", req.state}, {"describe", phi.describe()}, {"check", req.check}};
        bool pass = true;
        if (req.check == "rn") {
            RnReport rn = rn_audit(phi, cfg.chain->bicharacter(), budget);
            entry["verdict"] = rn.verdict;
            entry["antisymmetric"] = rn.antisymmetric;
            entry["rn_exempt"] = rn.rn_exempt;
            entry["violation"] = rn.violation;
            entry["exchangeable"] = audit_json(rn.exchangeable);
            entry["spreadable"] = audit_json(rn.spreadable);
            pass = !rn.violation;
        } else {
            AuditReport r = req.check == "exchangeable" ? audit_exchangeable(phi, budget)
                            : req.check == "spreadable" ? audit_spreadable(phi, budget)
                                                        : audit_stationary(phi, budget, req.shift);
            if (req.check == "stationary") {
                entry["shift"] = req.shift;
            }
            entry["result"] = audit_json(r);
            pass = r.pass;
        }
        entry["pass"] = pass;
        if (!pass) {
            res.exit_code = kExitFail;
        }
        out.push_back(entry);
    }
    res.report["audits"] = out;
    res.report["pass"] = res.exit_code == kExitPass;
    return res;
}

CommandResult braid_verify(const ExperimentConfig &cfg) {
    require_chain(cfg, "braid-verify");
    if (!cfg.braid) {
        throw ConfigError("braid-verify needs a braid section");
    }
    const BraidConfig &b = *cfg.braid;
    BraidAction rho = make_action(cfg, b);
    ChainState phi = b.state.empty() ? ChainState::product(cfg.chain, SampleState::trace(cfg.sample))
                                     : cfg.state(b.state);
    CommandResult res{header("braid-verify", &cfg)};
    json &r = res.report;
    r["action"] = rho.name();
    r["window"] = b.window;
    r["degree"] = b.degree;
    r["state"] = b.state.empty() ? "product trace" : b.state;
    bool pass = true;
    json sections = json::array();
    if (b.window >= 3) {
        BraidReport artin = verify_artin_relations(rho, b.window, b.degree);
        for (const auto &s : artin.sections) {
            sections.push_back(section_json(s));
        }
        pass = pass && artin.pass;
    } else {
        r["artin"] = "skipped: window under 3 sites";
    }
    BraidReport braid = verify_braidability(rho, phi, b.window, b.degree);
    for (const auto &s : braid.sections) {
        sections.push_back(section_json(s));
    }
    pass = pass && braid.pass;
    r["sections"] = sections;
    r["pass"] = pass;
    res.exit_code = pass ? kExitPass : kExitFail;
    return res;
}

CommandResult braid_obstruct(const ExperimentConfig &cfg, const RunOptions &options) {
    ObstructionConfig o = cfg.obstruction.value_or(ObstructionConfig{});
    if (options.window) {
        o.window = *options.window;
    }
    if (options.omit_site0) {
        o.omit_site0 = *options.omit_site0;
    }
    IndependenceModel model{cfg.symbols, o.theta, o.alpha};
    ObstructionTrace t = obstruction_solve(model, o.window, {o.omit_site0});
    CommandResult res{header("braid-obstruct", &cfg)};
    json &r = res.report;
    r["window"] = t.window;
    r["omit_site0"] = t.omit_site0;
    json steps = json::array();
    for (const auto &s : t.steps) {
        steps.push_back({{"source", s.source}, {"kind", s.kind}, {"statement", s.statement}, {"key", s.key}});
    }
    r["steps"] = steps;
    r["feasible"] = t.feasible;
    if (t.feasible) {
        json w = json::object();
        for (const auto &[k, v] : t.witness) {
            w[k] = v;
        }
        r["witness"] = w;
    } else {
        r["contradiction"] = t.contradiction;
    }
    res.exit_code = t.feasible ? kExitPass : kExitFail;
    return res;
}

CommandResult selftest() {
    CommandResult res{header("selftest", nullptr)};
    json checks = json::array();
    bool pass = true;
    for (const auto &c : golden_checks()) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        pass = pass && c.pass;
    }
    res.report["checks"] = checks;
    res.report["pass"] = pass;
    res.exit_code = pass ? kExitPass : kExitFail;
    return res;
}

std::string render_text(const json &report) {
    std::ostringstream out;
    render(out, report, 0);
    return out.str();
}

}  // namespace gradechain::app
