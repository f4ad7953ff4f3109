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

#include <set>

#include "gradechain/braid.h"
#include "gradechain/error.h"
#include "gradechain/models.h"

using namespace gradechain;

namespace {

SymbolTablePtr theta_alpha() {
    static SymbolTablePtr t = SymbolTable::create({"theta", "alpha"});
    return t;
}

Phase theta() {
    return Phase::symbol(theta_alpha(), "theta");
}

Phase alpha() {
    return Phase::symbol(theta_alpha(), "alpha");
}

ChainContextPtr torus() {
    static ChainContextPtr ctx = circle_chain(theta());
    return ctx;
}

ChainState haar(const ChainContextPtr &ctx) {
    return ChainState::product(ctx, SampleState::trace(ctx->sample()));
}

IndependenceModel standard_model() {
    return IndependenceModel{theta_alpha()};
}

std::vector<std::string> keys(const ObstructionTrace &t, const std::string &kind) {
    std::vector<std::string> out;
    for (const auto &s : t.steps) {
        if (s.kind == kind) {
            out.push_back(s.key);
        }
    }
    return out;
}

}  // namespace

TEST(torus_action, generator_images) {
    auto ctx = torus();
    BraidAction rho = build_torus_braid_action(ctx, 4);
    auto u = [&](int64_t s, int64_t k = 1) { return ChainElement::basis(ctx, s, {k}); };
    EXPECT_EQ(rho.apply(1, u(0)), u(1));
    EXPECT_EQ(rho.apply(1, u(2)), u(2));
    EXPECT_EQ(rho.apply(1, u(1)), (chain_star(u(0)) * u(1) * u(1)).scaled(ExactScalar::unit(theta())));
    EXPECT_EQ(rho.apply(1, u(1)), parse_chain_element(ctx, "(e(theta)) i[0](u^-1) i[1](u^2)"));
    // Inverse powers go through the involution.
    EXPECT_EQ(rho.apply(1, u(0, -1)), chain_star(u(1)));
    EXPECT_EQ(rho.apply(1, u(1, -2)), chain_star(rho.apply(1, u(1, 2))));
}

TEST(torus_action, doubled_phase_breaks_yang_baxter) {
    // With e(2 theta) in place of e(theta) every sigma_i is still an
    // automorphism preserving the Haar state, but s1 s2 s1 (u_2) and
    // s2 s1 s2 (u_2) differ by e(2 theta).
    auto ctx = torus();
    BraidAction rho = build_torus_braid_action(ctx, 4, theta() * 2);
    BraidReport artin = verify_artin_relations(rho, 4, 1);
    EXPECT_TRUE(artin.section("far_commutation")->pass);
    EXPECT_TRUE(artin.section("multiplicative")->pass);
    EXPECT_FALSE(artin.section("yang_baxter")->pass);
    EXPECT_TRUE(verify_braidability(rho, haar(ctx), 4, 2).pass);
    ChainElement u2 = ChainElement::basis(ctx, 2, {1});
    ChainElement lhs = rho.apply_word({1, 2, 1}, u2);
    EXPECT_EQ(rho.apply_word({2, 1, 2}, u2), lhs.scaled(ExactScalar::unit(theta() * 2)));
}

TEST(torus_action, needs_circle_chain) {
    EXPECT_THROW(build_torus_braid_action(car_chain(), 4), Error);
    EXPECT_THROW(build_torus_braid_action(torus_pair_chain(alpha(), theta()), 4), Error);
    try {
        build_torus_braid_action(parafermion_chain(3), 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadChain);
    }
}

TEST(torus_action, artin_relations_hold) {
    BraidAction rho = build_torus_braid_action(torus(), 4);
    BraidReport r = verify_artin_relations(rho, 4, 3);
    EXPECT_TRUE(r.pass);
    for (const auto &s : r.sections) {
        EXPECT_TRUE(s.pass) << s.name << ": " << (s.failures.empty() ? "" : s.failures.front());
        EXPECT_GT(s.checks, 0u) << s.name;
    }
}

TEST(torus_action, braidable_with_haar_state) {
    auto ctx = torus();
    BraidAction rho = build_torus_braid_action(ctx, 4);
    BraidReport r = verify_braidability(rho, haar(ctx), 4, 3);
    EXPECT_TRUE(r.pass);
    ASSERT_NE(r.section("braid1"), nullptr);
    EXPECT_EQ(r.section("braid1")->checks, 3u);
    EXPECT_EQ(r.section("braid2")->checks, 2u);
    EXPECT_GT(r.section("invariance")->checks, 100u);
}

TEST(torus_action, braid1_reaches_every_site) {
    auto ctx = torus();
    BraidAction rho = build_torus_braid_action(ctx, 6);
    for (int n = 1; n < 6; ++n) {
        std::vector<int> word;
        for (int k = n; k >= 1; --k) {
            word.push_back(k);
        }
        EXPECT_EQ(rho.apply_word(word, ChainElement::basis(ctx, 0, {1})), ChainElement::basis(ctx, n, {1}));
    }
}

TEST(torus_action, rational_theta) {
    auto ctx = circle_chain(Phase(Rational(1, 3)));
    BraidAction rho = build_torus_braid_action(ctx, 4);
    EXPECT_TRUE(verify_artin_relations(rho, 4, 3).pass);
    EXPECT_TRUE(verify_braidability(rho, haar(ctx), 4, 3).pass);
}

TEST(identity_action, fails_braid1_only) {
    auto ctx = torus();
    BraidAction id = identity_braid_action(ctx, 4);
    EXPECT_TRUE(verify_artin_relations(id, 4, 2).pass);
    BraidReport r = verify_braidability(id, haar(ctx), 4, 2);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.section("braid1")->pass);
    EXPECT_EQ(r.section("braid1")->failures.size(), 3u);
    EXPECT_TRUE(r.section("braid2")->pass);
    EXPECT_TRUE(r.section("invariance")->pass);
}

TEST(transposition_action, car_chain_passes) {
    auto ctx = car_chain();
    BraidAction rho = transposition_braid_action(ctx, 4);
    EXPECT_TRUE(verify_artin_relations(rho, 4, 2).pass);
    BraidReport r = verify_braidability(rho, haar(ctx), 4, 2);
    EXPECT_TRUE(r.pass);
    // Agrees with the permutation action of the chain.
    for (const auto &m : window_monomials(*ctx, 4, 2)) {
        ChainElement x = ChainElement::monomial(ctx, m);
        SitePermutation swap{{SiteIndex(1), SiteIndex(2)}, {SiteIndex(2), SiteIndex(1)}};
        EXPECT_EQ(rho.apply(2, x), apply_permutation(x, swap));
    }
}

TEST(transposition_action, needs_antisymmetric_v) {
    EXPECT_THROW(transposition_braid_action(torus(), 4), Error);
}

TEST(verification, window_checks) {
    BraidAction rho = build_torus_braid_action(torus(), 4);
    EXPECT_THROW(verify_artin_relations(rho, 2, 3), Error);
    EXPECT_THROW(verify_artin_relations(rho, 5, 3), Error);
    EXPECT_THROW(verify_braidability(rho, haar(torus()), 1, 3), Error);
    try {
        verify_braidability(rho, haar(torus()), 6, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowTooSmall);
    }
}

TEST(verification, broken_yang_baxter_is_caught) {
    // sigma_i(u_{i-1}) = u_i with sigma_i(u_i) = u_i^2 u_{i-1}^* misses the
    // phase and breaks multiplicativity against the commutation rule.
    auto ctx = torus();
    BraidAction rho(ctx, 4, "bad");
    for (int i = 1; i < 4; ++i) {
        rho.set_image(i, i - 1, 0, ChainElement::basis(ctx, i, {1}));
        rho.set_image(i, i, 0, ChainElement::monomial(ctx, {{SiteIndex(i - 1), {-1}}, {SiteIndex(i), {2}}}));
    }
    EXPECT_FALSE(verify_artin_relations(rho, 4, 2).pass);
}

TEST(braid_action, unitarity_is_checked) {
    auto ctx = torus();
    BraidAction rho(ctx, 3, "bad");
    rho.set_image(1, 0, 0, ChainElement::basis(ctx, 1, {1}) + ChainElement::basis(ctx, 2, {1}));
    EXPECT_THROW(rho.check_unitary(), Error);
    EXPECT_THROW(rho.set_image(3, 0, 0, ChainElement::unit(ctx)), Error);
    EXPECT_THROW(rho.set_image(1, 3, 0, ChainElement::unit(ctx)), Error);
    EXPECT_THROW(rho.set_image(1, 0, 0, ChainElement::unit(car_chain())), Error);
}

TEST(braid_action, torsion_order_is_checked) {
    auto ctx = parafermion_chain(3);
    BraidAction rho(ctx, 3, "bad");
    // A Z_3 generator sent to a unitary of order 6.
    rho.set_image(1, 0, 0, ChainElement::basis(ctx, 0, {1}).scaled(ExactScalar::unit(Phase(Rational(1, 2)))));
    EXPECT_THROW(rho.check_unitary(), Error);
}

TEST(braid_action, relation_consequences_agree) {
    // Pairs of words equal in the braid group, each following from the far
    // commutation and Yang-Baxter relations.
    const std::vector<std::pair<std::vector<int>, std::vector<int>>> equal_words{
        {{1, 3}, {3, 1}},
        {{1, 2, 1}, {2, 1, 2}},
        {{2, 3, 2}, {3, 2, 3}},
        {{1, 3, 2, 1}, {3, 2, 1, 2}},
        {{1, 2, 3, 1}, {2, 1, 2, 3}},
        {{1, 2, 3, 1, 2, 1}, {3, 2, 1, 3, 2, 3}},
        {{1, 2, 1, 1, 2, 1}, {2, 1, 2, 2, 1, 2}},
        {{3, 1, 2, 3, 2}, {1, 3, 3, 2, 3}},
    };
    auto check = [&](const BraidAction &rho) {
        const auto &ctx = rho.context();
        ASSERT_TRUE(verify_artin_relations(rho, 4, 2).pass);
        for (const auto &[a, b] : equal_words) {
            for (const auto &m : window_monomials(*ctx, 4, 2)) {
                ChainElement x = ChainElement::monomial(ctx, m);
                EXPECT_EQ(rho.apply_word(a, x), rho.apply_word(b, x)) << rho.name() << " on " << x.str();
            }
        }
    };
    check(build_torus_braid_action(torus(), 4));
    check(transposition_braid_action(car_chain(), 4));
    check(identity_braid_action(parafermion_chain(3), 4));
}

TEST(braid_action, braidable_states_are_spreadable) {
    auto ctx = torus();
    ChainState phi = haar(ctx);
    ASSERT_TRUE(verify_braidability(build_torus_braid_action(ctx, 4), phi, 4, 3).pass);
    EXPECT_TRUE(audit_spreadable(phi).pass);
}

TEST(braid_action, spreadable_parafermion_product_states_are_shift_invariant) {
    // No braid action on the parafermion chain is built here; the monotone
    // part of braid1 is checked directly on the window battery.
    auto ctx = parafermion_chain(3);
    std::vector<SampleState> omegas{SampleState::trace(ctx->sample())};
    for (int64_t d : {0, 1, 2}) {
        std::map<Element, ExactScalar> values{{{0}, 1}};
        if (d != 0) {
            values[{d}] = Rational(1, 4);
            values[{3 - d}] = Rational(1, 4);
        }
        omegas.emplace_back(ctx->sample(), values);
    }
    size_t tested = 0;
    for (const auto &omega : omegas) {
        if (!product_state_exists(omega, ctx->bicharacter()).exists) {
            continue;
        }
        ChainState phi = ChainState::product(ctx, omega);
        if (!audit_spreadable(phi).pass) {
            continue;
        }
        ++tested;
        for (const auto &m : window_monomials(*ctx, 4, 3)) {
            ChainElement x = ChainElement::monomial(ctx, m);
            for (int h = 0; h < 4; ++h) {
                EXPECT_EQ(phi(apply_monotone(x, SiteMap::partial_shift(h))), phi(x)) << x.str();
            }
        }
    }
    EXPECT_GT(tested, 0u);
}

TEST(window_monomials, counts) {
    // One unitary per site, weights |k|: monomials on 2 sites of weight <= 2
    // are 1, u_s^{+-1}, u_s^{+-2} per site and u_0^{+-1} u_1^{+-1}.
    EXPECT_EQ(window_monomials(*torus(), 2, 2).size(), 1u + 8u + 4u);
    // Z_2 x Z_2 letters all have weight 1 or 2: three letters, two of weight 1.
    EXPECT_EQ(window_monomials(*car_chain(), 1, 2).size(), 4u);
    EXPECT_EQ(window_monomials(*torus(), 3, 0).size(), 1u);
}

TEST(obstruction, standard_chain_is_infeasible) {
    ObstructionTrace t = obstruction_solve(standard_model(), 5);
    EXPECT_FALSE(t.feasible);
    EXPECT_TRUE(t.witness.empty());
    std::vector<std::string> expected{"q2=0", "q3=0", "q4=0", "q5=0", "j5=0", "j4=0",
                                      "j3=0", "j2=0", "q1=0", "j0=-1", "j1=2"};
    EXPECT_EQ(keys(t, "constraint"), expected);
    ASSERT_FALSE(t.steps.empty());
    EXPECT_EQ(t.steps.back().kind, "contradiction");
    EXPECT_EQ(t.steps.back().source, "i_3bis");
    EXPECT_EQ(t.steps.back().key, "j1=2&j1=0");
    EXPECT_EQ(t.contradiction, "j_1 = 2 and j_1 = 0");
    std::vector<std::string> sources;
    for (const auto &s : t.steps) {
        if (s.kind != "relation") {
            sources.push_back(s.source);
        }
    }
    std::vector<std::string> expected_sources{"i_r",  "i_r",    "i_r",    "i_r",  "i_42",  "i_42",
                                              "i_42", "i_42",   "i_2bis", "i_2bis", "i_42", "i_3bis"};
    EXPECT_EQ(sources, expected_sources);
}

TEST(obstruction, omitting_site0_fails_earlier) {
    ObstructionTrace full = obstruction_solve(standard_model(), 5);
    ObstructionTrace t = obstruction_solve(standard_model(), 5, {true});
    EXPECT_FALSE(t.feasible);
    EXPECT_EQ(t.steps.back().source, "i_2bis");
    EXPECT_EQ(t.steps.back().key, "0=1");
    EXPECT_LT(keys(t, "constraint").size(), keys(full, "constraint").size());
    for (const auto &s : t.steps) {
        EXPECT_EQ(s.key.find("j0"), std::string::npos);
    }
}

TEST(obstruction, empty_window_is_feasible) {
    ObstructionTrace t = obstruction_solve(standard_model(), 0);
    EXPECT_TRUE(t.feasible);
    EXPECT_TRUE(t.steps.empty());
    EXPECT_TRUE(t.contradiction.empty());
}

TEST(obstruction, monotone_in_window) {
    for (int n = 1; n < 8; ++n) {
        ObstructionTrace small = obstruction_solve(standard_model(), n);
        ObstructionTrace large = obstruction_solve(standard_model(), n + 1);
        auto a = keys(small, "constraint");
        auto b = keys(large, "constraint");
        std::set<std::string> bs(b.begin(), b.end());
        for (const auto &k : a) {
            EXPECT_TRUE(bs.count(k)) << k << " lost going from " << n << " to " << n + 1;
        }
        EXPECT_FALSE(small.feasible);
        EXPECT_FALSE(large.feasible);
        EXPECT_EQ(small.steps.back().key, large.steps.back().key);
    }
}

TEST(obstruction, model_must_match) {
    try {
        obstruction_solve(IndependenceModel{SymbolTable::create({"theta"})}, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ModelMismatch);
    }
    EXPECT_THROW(obstruction_solve(IndependenceModel{SymbolTable::create({"theta", "alpha", "beta"})}, 3), Error);
    EXPECT_THROW(obstruction_solve(IndependenceModel{SymbolTable::create({"theta", "alpha"}, false)}, 3), Error);
    EXPECT_THROW(obstruction_solve(IndependenceModel{theta_alpha(), "theta", "theta"}, 3), Error);
    auto renamed = SymbolTable::create({"t", "a"});
    EXPECT_FALSE(obstruction_solve(IndependenceModel{renamed, "t", "a"}, 4).feasible);
}

TEST(obstruction, conjugation_phases_match_commutation_rule) {
    // u_r X u_r^* for X = prod_p u_p^{j_p} w_p^{q_p}: u_r passes u_p with
    // phase -theta j_p for p < r and +theta j_p for p > r, and w_r^{q_r}
    // with alpha q_r; w_r passes w_p with the same theta pattern in q_p.
    auto ctx = torus_pair_chain(alpha(), theta());
    const int n = 4;
    std::vector<int64_t> j{-1, 2, 0, 3, 1}, q{2, 0, -1, 0, 1};
    ChainMonomial m;
    for (int p = 0; p <= n; ++p) {
        m.push_back({SiteIndex(p), {j[p], q[p]}});
    }
    ChainElement x = ChainElement::monomial(ctx, m);
    for (int r = 0; r <= n + 1; ++r) {
        Phase expect_u, expect_w;
        for (int p = 0; p <= n; ++p) {
            int sign = p < r ? -1 : (p > r ? 1 : 0);
            expect_u = expect_u + theta() * (sign * j[p]);
            expect_w = expect_w + theta() * (sign * q[p]);
        }
        if (r <= n) {
            expect_u = expect_u + alpha() * q[r];
            expect_w = expect_w - alpha() * j[r];
        }
        ChainElement u = ChainElement::basis(ctx, r, {1, 0});
        ChainElement w = ChainElement::basis(ctx, r, {0, 1});
        EXPECT_EQ(u * x * chain_star(u), x.scaled(ExactScalar::unit(expect_u))) << "u at " << r;
        EXPECT_EQ(w * x * chain_star(w), x.scaled(ExactScalar::unit(expect_w))) << "w at " << r;
    }
}
