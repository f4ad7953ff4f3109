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

#include <random>

#include "gradechain/error.h"
#include "gradechain/models.h"
#include "gradechain/states.h"

using namespace gradechain;

namespace {

SymbolTablePtr symbols() {
    static SymbolTablePtr t = SymbolTable::create({"alpha"});
    return t;
}

Phase alpha() {
    return Phase::symbol(symbols(), "alpha");
}

// An even state on M_2: omega(c1^a c2^b) nonzero only on even degree.
SampleState car_even_state(const SampleAlgebraPtr &m, Rational z) {
    // b_(1,1) has degree 0 and star phase c((1,1),(1,1)) = 1/2, so a
    // hermitian value there must be purely imaginary.
    return SampleState(m, {{{0, 0}, 1}, {{1, 1}, ExactScalar::term(z, Phase(Rational(1, 4)))}});
}

SampleState circle_state(const SampleAlgebraPtr &f, Rational a) {
    return SampleState(f, {{{0}, 1}, {{1}, a}, {{-1}, a}});
}

SampleState z3_state(const SampleAlgebraPtr &f, const std::vector<Element> &support, Rational weight) {
    std::map<Element, ExactScalar> values{{{0, 0}, 1}};
    for (const auto &x : support) {
        values[x] = weight;
    }
    return SampleState(f, values);
}

FreeMonomial parse_free(const ChainContextPtr &ctx, const std::string &text) {
    return FreeMonomial::parse(ctx->sample(), text);
}

}  // namespace

TEST(product_gate, examples) {
    auto car = car_chain();
    SampleState odd(car->sample(), {{{0, 0}, 1}, {{1, 0}, Rational(1, 2)}});
    ProductGate g = product_state_exists(odd, car->bicharacter());
    EXPECT_FALSE(g.exists);
    ASSERT_TRUE(g.witness.has_value());
    EXPECT_EQ(g.witness->first, (Element{1}));
    EXPECT_EQ(g.witness->second, (Element{1}));
    EXPECT_THROW(ChainState::product(car, odd), Error);

    EXPECT_TRUE(product_state_exists(car_even_state(car->sample(), Rational(1, 3)), car->bicharacter()).exists);
    EXPECT_TRUE(product_state_exists(SampleState::trace(car->sample()), car->bicharacter()).exists);

    auto z3 = z3_squared_chain();
    SampleState on_g1 = z3_state(z3->sample(), {{1, 1}, {2, 2}}, Rational(1, 2));
    EXPECT_TRUE(product_state_exists(on_g1, z3->bicharacter()).exists);
    SampleState mixed = z3_state(z3->sample(), {{1, 1}, {2, 2}, {1, 0}, {2, 0}}, Rational(1, 4));
    EXPECT_FALSE(product_state_exists(mixed, z3->bicharacter()).exists);
}

TEST(eval_monomial, examples) {
    auto ctx = circle_chain(alpha());
    auto tr = ChainState::product(ctx, SampleState::trace(ctx->sample()));
    ExactScalar w = eval_monomial(tr, parse_free(ctx, "i[1](u) i[2](u) i[1](u^-1) i[2](u^-1)"));
    EXPECT_EQ(w, ExactScalar::unit(alpha()));
    ExactScalar swapped = eval_monomial(tr, parse_free(ctx, "i[2](u) i[1](u) i[2](u^-1) i[1](u^-1)"));
    EXPECT_EQ(swapped, w.conj());
    EXPECT_TRUE(eval_monomial(tr, parse_free(ctx, "i[0](u)")).is_zero());
    EXPECT_EQ(eval_monomial(tr, FreeMonomial{}), ExactScalar(1));

    auto z3 = z3_squared_chain();
    SampleState omega = z3_state(z3->sample(), {{1, 1}, {2, 2}}, Rational(1, 3));
    auto phi = ChainState::product(z3, omega);
    ExactScalar ordered = eval_monomial(phi, parse_free(z3, "i[0](g1^1 g2^1) i[3](g1^2 g2^2) i[5](g1 g2)"));
    EXPECT_EQ(ordered, ExactScalar(Rational(1, 27)));
}

TEST(eval_monomial, unitary_commutator_gives_bicharacter) {
    // With omega = trace, phi(i1(U) i2(V) i1(U*) i2(V*)) = v(deg U, deg V).
    auto z3 = z3_squared_chain();
    auto tr = ChainState::product(z3, SampleState::trace(z3->sample()));
    const auto &g = z3->sample()->index_group();
    for (const auto &x : g.elements()) {
        for (const auto &y : g.elements()) {
            FreeMonomial m = FreeMonomial::from_factors(
                z3->sample(), {{1, x}, {2, y}, {1, g.negate(x)}, {2, g.negate(y)}});
            EXPECT_EQ(eval_monomial(tr, m), ExactScalar::unit(z3->bicharacter()(x, y)));
        }
    }
}

TEST(chain_state, hermitian_for_all_variants) {
    auto car = car_chain();
    auto m = car->sample();
    std::vector<ChainState> states{
        ChainState::product(car, car_even_state(m, Rational(1, 2))),
        ChainState::pinned(car, {{SiteIndex(0), car_even_state(m, Rational(-1, 3))}}, SampleState::trace(m)),
        ChainState::pinned(car, {{SiteIndex(1), car_even_state(m, Rational(1, 5))}}, car_even_state(m, Rational(2, 5)), 2),
    };
    states.push_back(ChainState::mixture({{Rational(1, 3), states[0]}, {Rational(2, 3), states[2]}}));
    AuditBudget budget;
    budget.max_sites = 3;
    for (const auto &phi : states) {
        for (int k = 0; k < 200; ++k) {
            FreeMonomial x = random_monomial(m, budget, k);
            EXPECT_EQ(eval_monomial(phi, x.star()), eval_monomial(phi, x).conj()) << phi.describe() << " " << x.str();
        }
        EXPECT_EQ(eval_monomial(phi, FreeMonomial{}), ExactScalar(1));
    }
}

TEST(chain_state, construction_checks) {
    auto car = car_chain();
    auto m = car->sample();
    auto p = ChainState::product(car, SampleState::trace(m));
    EXPECT_THROW(ChainState::mixture({{Rational(1, 2), p}}), Error);
    EXPECT_THROW(ChainState::mixture({{Rational(3, 2), p}, {Rational(-1, 2), p}}), Error);
    EXPECT_THROW(ChainState::mixture({}), Error);
    SampleState odd(m, {{{0, 0}, 1}, {{0, 1}, Rational(1, 2)}});
    EXPECT_THROW(ChainState::pinned(car, {{SiteIndex(3), odd}}, SampleState::trace(m)), Error);
    EXPECT_THROW(ChainState::pinned(car, {{SiteIndex(3), SampleState::trace(m)}}, SampleState::trace(m), 2), Error);
    EXPECT_THROW(ChainState::product(car, SampleState::trace(clock_shift(2))), Error);
}

// For a gated product state and homogeneous a, b with nonzero values,
// hermiticity of phi(i0(a) i1(b)) forces v(deg b, deg a) = 0.
TEST(chain_state, product_hermiticity_forces_vanishing_v) {
    std::mt19937_64 rng(8);
    auto z3 = z3_squared_chain();
    const auto &sample = z3->sample();
    const auto &g = sample->index_group();
    auto maxes = maximal_isotropic_subgroups(z3->bicharacter());
    for (int trial = 0; trial < 30; ++trial) {
        const Subgroup &s = maxes[rng() % maxes.size()];
        std::vector<Element> support;
        for (const auto &x : s.elements()) {
            if (!g.is_zero(x) && rng() % 2) {
                support.push_back(x);
            }
        }
        // Hermitian: values on x and -x are equal rationals.
        std::map<Element, ExactScalar> values{{g.zero(), 1}};
        for (const auto &x : support) {
            Rational r(1 + (int64_t)(rng() % 3), 7);
            values[x] = r;
            values[g.negate(x)] = r;
        }
        auto phi = ChainState::product(z3, SampleState(sample, values));
        for (const auto &[a, va] : values) {
            for (const auto &[b, vb] : values) {
                FreeMonomial m = FreeMonomial::from_factors(sample, {{0, a}, {1, b}});
                EXPECT_EQ(eval_monomial(phi, m.star()), eval_monomial(phi, m).conj());
                EXPECT_TRUE(z3->bicharacter()(sample->degree(b), sample->degree(a)).is_zero());
            }
        }
    }
}

TEST(audits, torus_trace_spreadable_not_exchangeable) {
    auto ctx = circle_chain(alpha());
    auto tr = ChainState::product(ctx, SampleState::trace(ctx->sample()));
    AuditBudget budget;
    budget.samples = 100;
    AuditReport ex = audit_exchangeable(tr, budget);
    EXPECT_FALSE(ex.pass);
    bool found = false;
    for (const auto &w : ex.witnesses) {
        if (w.monomial == "i[1](u^1) i[2](u^1) i[1](u^-1) i[2](u^-1)" && w.map == "swap(1,2)") {
            found = true;
            EXPECT_EQ(w.value, ExactScalar::unit(alpha()));
            EXPECT_EQ(w.mapped_value, ExactScalar::unit(-alpha()));
        }
    }
    EXPECT_TRUE(found);
    EXPECT_TRUE(audit_spreadable(tr, budget).pass);
    EXPECT_TRUE(audit_stationary(tr, budget).pass);
}

TEST(audits, rational_torus_witness_values) {
    auto ctx = circle_chain(Phase(Rational(1, 3)));
    auto tr = ChainState::product(ctx, SampleState::trace(ctx->sample()));
    AuditBudget budget;
    budget.samples = 0;
    AuditReport ex = audit_exchangeable(tr, budget);
    ASSERT_FALSE(ex.pass);
    bool found = false;
    for (const auto &w : ex.witnesses) {
        if (w.monomial == "i[1](u^1) i[2](u^1) i[1](u^-1) i[2](u^-1)" && w.map == "swap(1,2)") {
            found = true;
            EXPECT_EQ(w.value, ExactScalar::unit(Phase(Rational(1, 3))));
            EXPECT_EQ(w.mapped_value, ExactScalar::unit(Phase(Rational(-1, 3))));
        }
    }
    EXPECT_TRUE(found);
}

TEST(audits, car_product_passes_both) {
    auto car = car_chain();
    auto phi = ChainState::product(car, car_even_state(car->sample(), Rational(1, 3)));
    AuditBudget budget;
    budget.samples = 100;
    RnReport rn = rn_audit(phi, car->bicharacter(), budget);
    EXPECT_TRUE(rn.exchangeable.pass);
    EXPECT_TRUE(rn.spreadable.pass);
    EXPECT_EQ(rn.verdict, "spreadable ∧ exchangeable");
    EXPECT_FALSE(rn.rn_exempt);
    EXPECT_FALSE(rn.violation);
}

TEST(audits, trivial_v_passes) {
    auto f = function_algebra(DegreeGroup::lattice(1));
    auto ctx = make_chain(f, Bicharacter::trivial(f->degree_group()));
    auto phi = ChainState::product(ctx, circle_state(f, Rational(1, 3)));
    AuditBudget budget;
    budget.samples = 100;
    RnReport rn = rn_audit(phi, ctx->bicharacter(), budget);
    EXPECT_EQ(rn.verdict, "spreadable ∧ exchangeable");
}

TEST(audits, rn_report_for_torus) {
    auto ctx = circle_chain(alpha());
    auto tr = ChainState::product(ctx, SampleState::trace(ctx->sample()));
    AuditBudget budget;
    budget.samples = 50;
    RnReport rn = rn_audit(tr, ctx->bicharacter(), budget);
    EXPECT_EQ(rn.verdict, "spreadable ∧ ¬exchangeable");
    EXPECT_TRUE(rn.rn_exempt);
    EXPECT_FALSE(rn.violation);
}

TEST(audits, pinned_states) {
    auto f = function_algebra(DegreeGroup::lattice(1));
    auto ctx = make_chain(f, Bicharacter::trivial(f->degree_group()));
    SampleState a = circle_state(f, Rational(1, 3));
    SampleState b = circle_state(f, Rational(1, 5));
    AuditBudget budget;
    budget.samples = 50;

    auto two = ChainState::pinned(ctx, {{SiteIndex(1), a}}, b);
    AuditReport sp = audit_spreadable(two, budget);
    EXPECT_FALSE(sp.pass);
    bool shift_witness = std::any_of(sp.witnesses.begin(), sp.witnesses.end(),
                                     [](const AuditWitness &w) { return w.map == "tau^1"; });
    EXPECT_TRUE(shift_witness);

    auto periodic = ChainState::pinned(ctx, {{SiteIndex(0), a}, {SiteIndex(1), b}}, a, 2);
    EXPECT_FALSE(audit_stationary(periodic, budget, 1).pass);
    EXPECT_TRUE(audit_stationary(periodic, budget, 2).pass);

    auto mix = ChainState::mixture({{Rational(1, 4), ChainState::product(ctx, a)},
                                    {Rational(3, 4), ChainState::product(ctx, b)}});
    EXPECT_TRUE(audit_spreadable(mix, budget).pass);
    EXPECT_TRUE(audit_stationary(mix, budget).pass);
    EXPECT_TRUE(audit_exchangeable(mix, budget).pass);
}

TEST(audits, deterministic_per_seed) {
    auto ctx = circle_chain(alpha());
    auto tr = ChainState::product(ctx, SampleState::trace(ctx->sample()));
    AuditBudget budget;
    budget.samples = 40;
    budget.seed = 99;
    AuditReport a = audit_exchangeable(tr, budget);
    AuditReport b = audit_exchangeable(tr, budget);
    EXPECT_EQ(a.failures, b.failures);
    ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
    for (size_t k = 0; k < a.witnesses.size(); ++k) {
        EXPECT_EQ(a.witnesses[k].monomial, b.witnesses[k].monomial);
    }
    auto sample = ctx->sample();
    EXPECT_EQ(random_monomial(sample, budget, 7).str(), random_monomial(sample, budget, 7).str());
}

TEST(audits, canonical_battery_shape) {
    auto battery = canonical_battery(circle_chain(alpha())->sample());
    EXPECT_EQ(battery.size(), 4u + 16u + 64u + 256u);
    auto car_battery = canonical_battery(clock_shift(2));
    EXPECT_EQ(car_battery.size(), 340u);
}

TEST(predicates, h_abelian_and_poulsen_examples) {
    Bicharacter z3 = z3_squared_bicharacter();
    EXPECT_TRUE(h_abelian_sufficient(z3).holds);
    EXPECT_FALSE(poulsen_condition(z3));

    Bicharacter car = car_chain()->bicharacter();
    EXPECT_TRUE(h_abelian_sufficient(car).holds);

    DegreeGroup k4(0, {2, 2});
    Bicharacter bad = Bicharacter::from_integer_matrix(k4, {{0, 1}, {1, 0}}, 2);
    PairVerdict verdict = h_abelian_sufficient(bad);
    EXPECT_FALSE(verdict.holds);
    ASSERT_TRUE(verdict.witness.has_value());
    EXPECT_FALSE(bad(verdict.witness->first, verdict.witness->second).is_zero());
    EXPECT_EQ(verdict.witness->first, (Element{0, 1}));
    EXPECT_EQ(verdict.witness->second, (Element{1, 0}));

    EXPECT_TRUE(poulsen_condition(Bicharacter::trivial(k4)));
    EXPECT_THROW(poulsen_condition(Bicharacter::trivial(DegreeGroup::lattice(1))), Error);
    EXPECT_THROW(h_abelian_sufficient(Bicharacter::trivial(DegreeGroup::lattice(1))), Error);
}

TEST(predicates, rational_torus_quotients_satisfy_poulsen) {
    for (int64_t n = 2; n <= 24; ++n) {
        for (int64_t p = 1; p < n; ++p) {
            Bicharacter v = Bicharacter::from_integer_matrix(DegreeGroup::cyclic(n), {{p}}, n);
            EXPECT_TRUE(poulsen_condition(v)) << p << "/" << n;
        }
    }
}

TEST(predicates, witness_search) {
    DegreeGroup k4(0, {2, 2});
    Bicharacter bad = Bicharacter::from_integer_matrix(k4, {{0, 1}, {1, 0}}, 2);
    auto f = function_algebra(k4);
    auto ctx = make_chain(f, bad);
    std::vector<ChainState> family{ChainState::product(ctx, SampleState::trace(f))};
    for (const auto &x : k4.elements()) {
        if (k4.is_zero(x)) {
            continue;
        }
        SampleState omega(f, {{k4.zero(), 1}, {x, Rational(1, 2)}});
        if (product_state_exists(omega, bad).exists) {
            family.push_back(ChainState::product(ctx, omega));
        }
    }
    family.push_back(ChainState::mixture({{Rational(1, 2), family[0]}, {Rational(1, 2), family.back()}}));
    AuditBudget budget;
    budget.samples = 200;
    WitnessSearch search = h_abelian_witness_search(bad, family, budget);
    EXPECT_FALSE(search.witness.has_value());
    EXPECT_TRUE(search.inconclusive);
    EXPECT_GT(search.candidates, 0u);

    auto trivial_ctx = make_chain(f, Bicharacter::trivial(k4));
    WitnessSearch none = h_abelian_witness_search(Bicharacter::trivial(k4),
                                                  {ChainState::product(trivial_ctx, SampleState::trace(f))}, budget);
    EXPECT_FALSE(none.witness.has_value());
    EXPECT_EQ(none.candidates, 0u);

    auto car = car_chain();
    WitnessSearch empty = h_abelian_witness_search(car->bicharacter(),
                                                   {ChainState::product(car, SampleState::trace(car->sample()))}, budget);
    EXPECT_EQ(empty.candidates, 0u);
}

TEST(predicates, witness_search_on_isotropic_support) {
    // v vanishes on G_1 x G_1, so no pair of G_1-supported monomials can
    // carry a nonzero twist.
    auto z3 = z3_squared_chain();
    SampleState omega = z3_state(z3->sample(), {{1, 1}, {2, 2}}, Rational(1, 3));
    WitnessSearch s = h_abelian_witness_search(z3->bicharacter(), {ChainState::product(z3, omega)}, AuditBudget{});
    EXPECT_FALSE(s.witness.has_value());
    EXPECT_TRUE(s.inconclusive);
}
