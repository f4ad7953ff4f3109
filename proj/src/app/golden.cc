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

#include <set>

#include "gradechain/app/commands.h"
#include "gradechain/models.h"

namespace gradechain::app {

namespace {

std::string bool_str(bool b) {
    return b ? "true" : "false";
}

std::string elements_str(const std::vector<Element> &es) {
    std::string out;
    for (const auto &e : es) {
        out += (out.empty() ? "" : " ") + element_str(e);
    }
    return "{" + out + "}";
}

}  // namespace

std::vector<GoldenCheck> golden_checks() {
    std::vector<GoldenCheck> out;
    auto add = [&](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };

    Bicharacter z3 = z3_squared_bicharacter();
    IsotropySet delta = delta_v(z3);
    std::set<Element> got(delta.elements.begin(), delta.elements.end());
    std::set<Element> want{{0, 0}, {1, 1}, {2, 2}, {1, 0}, {2, 0}};
    add("z3_squared_delta_v", got == want && !delta.is_subgroup, elements_str(delta.elements));
    Phase pairing = z3({1, 0}, {1, 1});
    add("z3_squared_pairing", pairing == Phase(Rational(1, 3)), "v((1,0),(1,1)) = " + pairing.str());
    auto maximal = maximal_isotropic_subgroups(z3);
    DegreeGroup g = z3.group();
    std::vector<Subgroup> expected{subgroup_generated(g, {{1, 1}}), subgroup_generated(g, {{1, 0}})};
    bool same = maximal.size() == 2 && std::all_of(expected.begin(), expected.end(), [&](const Subgroup &s) {
                    return std::any_of(maximal.begin(), maximal.end(), [&](const Subgroup &m) { return m == s; });
                });
    std::string listed;
    for (const auto &m : maximal) {
        listed += (listed.empty() ? "" : " ") + m.str();
    }
    add("z3_squared_maximal_isotropic", same, listed);
    add("z3_squared_poulsen", !poulsen_condition(z3), "poulsen_condition = " + bool_str(poulsen_condition(z3)));
    add("z3_squared_h_abelian", h_abelian_sufficient(z3).holds,
        "h_abelian_sufficient = " + bool_str(h_abelian_sufficient(z3).holds));

    auto car = car_chain();
    SampleState odd(car->sample(), {{{0, 0}, 1}, {{1, 0}, Rational(1, 2)}});
    ProductGate gate = product_state_exists(odd, car->bicharacter());
    add("car_gate_odd_support",
        !gate.exists && gate.witness && gate.witness->first == Element{1} && gate.witness->second == Element{1},
        gate.witness ? "witness " + element_str(gate.witness->first) + " " + element_str(gate.witness->second)
                     : "no witness");
    add("car_gate_trace", product_state_exists(SampleState::trace(car->sample()), car->bicharacter()).exists,
        "trace");

    auto symbols = SymbolTable::create({"alpha"});
    Phase alpha = Phase::symbol(symbols, "alpha");
    auto torus = circle_chain(alpha);
    ChainState tr = ChainState::product(torus, SampleState::trace(torus->sample()));
    const std::string word = "i[1](u^1) i[2](u^1) i[1](u^-1) i[2](u^-1)";
    ExactScalar value = eval_monomial(tr, FreeMonomial::parse(torus->sample(), word));
    ExactScalar swapped = eval_monomial(tr, FreeMonomial::parse(torus->sample(), "i[2](u^1) i[1](u^1) i[2](u^-1) i[1](u^-1)"));
    add("torus_commutator_value", value == ExactScalar::unit(alpha) && swapped == value.conj(),
        value.str() + " and " + swapped.str());
    AuditReport ex = audit_exchangeable(tr);
    bool witnessed = std::any_of(ex.witnesses.begin(), ex.witnesses.end(), [&](const AuditWitness &w) {
        return w.monomial == word && w.map == "swap(1,2)";
    });
    add("torus_not_exchangeable", !ex.pass && witnessed, std::to_string(ex.failures) + " failures");
    AuditReport sp = audit_spreadable(tr);
    add("torus_spreadable", sp.pass, std::to_string(sp.samples_run) + " monomials");

    Bicharacter k4 = Bicharacter::from_integer_matrix(DegreeGroup(0, {2, 2}), {{0, 1}, {1, 0}}, 2);
    add("z2_squared_counter_case", !h_abelian_sufficient(k4).holds, "h_abelian_sufficient = false expected");

    ObstructionTrace trace = obstruction_solve(IndependenceModel{SymbolTable::create({"theta", "alpha"})}, 5);
    add("braid_obstruction", !trace.feasible && trace.steps.back().key == "j1=2&j1=0", trace.contradiction);

    auto theta_table = SymbolTable::create({"theta"});
    auto circle = circle_chain(Phase::symbol(theta_table, "theta"));
    BraidAction rho = build_torus_braid_action(circle, 4);
    ChainState haar = ChainState::product(circle, SampleState::trace(circle->sample()));
    bool artin = verify_artin_relations(rho, 4, 3).pass;
    bool braidable = verify_braidability(rho, haar, 4, 3).pass;
    add("torus_braid_action", artin && braidable, "artin " + bool_str(artin) + ", braidability " + bool_str(braidable));
    BraidReport id = verify_braidability(identity_braid_action(circle, 4), haar, 4, 3);
    add("identity_fails_braid1", !id.section("braid1")->pass, "braid1 = " + bool_str(id.section("braid1")->pass));
    return out;
}

}  // namespace gradechain::app
