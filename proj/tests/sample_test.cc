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
#include "gradechain/sample.h"

using namespace gradechain;

namespace {

SymbolTablePtr alpha_table() {
    static SymbolTablePtr t = SymbolTable::create({"alpha"});
    return t;
}

Phase alpha() {
    return Phase::symbol(alpha_table(), "alpha");
}

Element random_index(const SampleAlgebra &alg, std::mt19937_64 &rng) {
    Element m(alg.index_group().rank());
    for (auto &c : m) {
        c = (int64_t)(rng() % 7) - 3;
    }
    return alg.index_group().reduce(m);
}

std::vector<SampleAlgebraPtr> all_samples() {
    return {function_algebra(DegreeGroup(0, {3, 3})), function_algebra(DegreeGroup::lattice(1)), clock_shift(2),
            clock_shift(3), nc_torus(alpha()), nc_torus(Phase(Rational(1, 5))), parafermion(3)};
}

}  // namespace

TEST(sample, torus_commutation) {
    auto t = nc_torus(alpha());
    auto u = SampleElement::basis(t, {1, 0});
    auto w = SampleElement::basis(t, {0, 1});
    EXPECT_EQ(u * w, (w * u).scaled(ExactScalar::unit(alpha())));
    EXPECT_EQ(u * w, SampleElement::basis(t, {1, 1}, ExactScalar::unit(alpha())));
}

TEST(sample, clock_shift_two_anticommutes) {
    auto m = clock_shift(2);
    auto c1 = SampleElement::basis(m, {1, 0});
    auto c2 = SampleElement::basis(m, {0, 1});
    EXPECT_TRUE((c1 * c2 + c2 * c1).is_zero());
    EXPECT_EQ(c1 * c1, SampleElement::unit(m));
}

TEST(sample, clock_shift_q_commutation) {
    for (int64_t d : {3, 4, 5}) {
        auto m = clock_shift(d);
        auto c1 = SampleElement::basis(m, {1, 0});
        auto c2 = SampleElement::basis(m, {0, 1});
        EXPECT_EQ(c1 * c2, (c2 * c1).scaled(ExactScalar::unit(Phase(Rational(1, d)))));
        SampleElement p = SampleElement::unit(m);
        for (int64_t k = 0; k < d; ++k) {
            p = p * c1;
        }
        EXPECT_EQ(p, SampleElement::unit(m));
        EXPECT_EQ(m->degree({1, 0}), (Element{1}));
        EXPECT_EQ(m->degree({1, 1}), (Element{2 % d}));
    }
}

TEST(sample, parafermion_order) {
    auto pf = parafermion(3);
    auto c = SampleElement::basis(pf, {1});
    EXPECT_EQ(c * c * c, SampleElement::unit(pf));
    EXPECT_THROW(parafermion(1), Error);
    EXPECT_THROW(clock_shift(0), Error);
}

TEST(sample, invalid_definitions) {
    DegreeGroup z2 = DegreeGroup::cyclic(2);
    // Degree map must kill the order of each generator.
    EXPECT_THROW(SampleAlgebra("bad", {"x"}, z2, {{Phase()}}, DegreeGroup::cyclic(3), {{1}}), Error);
    EXPECT_THROW(SampleAlgebra("bad", {"x", "y"}, z2, {{Phase()}}, z2, {{1}}), Error);
    EXPECT_THROW(SampleAlgebra("bad", {"x"}, z2, {{Phase(Rational(1, 3))}}, z2, {{1}}), Error);
}

TEST(sample, algebra_laws_on_random_basis_triples) {
    std::mt19937_64 rng(21);
    for (const auto &alg : all_samples()) {
        for (int trial = 0; trial < 200; ++trial) {
            Element m = random_index(*alg, rng), n = random_index(*alg, rng), p = random_index(*alg, rng);
            const DegreeGroup &idx = alg->index_group();
            EXPECT_EQ(alg->cocycle(m, n) + alg->cocycle(idx.add(m, n), p),
                      alg->cocycle(n, p) + alg->cocycle(m, idx.add(n, p)));
            EXPECT_EQ(alg->degree(idx.add(m, n)), alg->degree_group().add(alg->degree(m), alg->degree(n)));
            auto x = SampleElement::basis(alg, m, ExactScalar::term(2, Phase(Rational(1, 7))));
            auto y = SampleElement::basis(alg, n);
            auto z = SampleElement::basis(alg, p) + SampleElement::unit(alg);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x.star().star(), x);
            EXPECT_EQ((x * y).star(), y.star() * x.star());
            EXPECT_EQ(SampleElement::basis(alg, m).star() * SampleElement::basis(alg, m), SampleElement::unit(alg));
            auto deg = x.homogeneous_degree();
            ASSERT_TRUE(deg.has_value());
            EXPECT_EQ(*x.star().homogeneous_degree(), alg->degree_group().negate(*deg));
        }
    }
}

TEST(sample, algebra_mismatch) {
    auto a = SampleElement::unit(clock_shift(2));
    auto b = SampleElement::unit(clock_shift(2));
    EXPECT_THROW(a * b, Error);
}

TEST(sample, spectral_projection) {
    auto t = nc_torus(alpha());
    auto x = SampleElement::basis(t, {0, 0}, 2) + SampleElement::basis(t, {1, 0}, 3);
    EXPECT_EQ(spectral_projection(x, subgroup_generated(t->degree_group(), {})), SampleElement::basis(t, {0, 0}, 2));
    Subgroup all = subgroup_generated(t->degree_group(), {{1, 0}, {0, 1}});
    EXPECT_EQ(spectral_projection(x, all), x);

    auto f = function_algebra(DegreeGroup(0, {3, 3}));
    Subgroup g1 = subgroup_generated(f->degree_group(), {{1, 1}});
    auto y = SampleElement::basis(f, {1, 1}) + SampleElement::basis(f, {1, 0});
    EXPECT_EQ(spectral_projection(y, g1), SampleElement::basis(f, {1, 1}));
}

TEST(sample, spectral_projection_is_conditional_expectation) {
    std::mt19937_64 rng(2);
    auto f = function_algebra(DegreeGroup(0, {3, 3}));
    Subgroup g1 = subgroup_generated(f->degree_group(), {{1, 1}});
    for (int trial = 0; trial < 100; ++trial) {
        SampleElement x(f), y(f);
        for (int k = 0; k < 3; ++k) {
            x.add_term(random_index(*f, rng), 1 + (int)(rng() % 3));
            y.add_term(random_index(*f, rng), 1 + (int)(rng() % 3));
        }
        SampleElement px = spectral_projection(x, g1);
        EXPECT_EQ(spectral_projection(px, g1), px);
        EXPECT_EQ(spectral_projection(px * y, g1), px * spectral_projection(y, g1));
    }
    EXPECT_EQ(spectral_projection(SampleElement::unit(f), g1), SampleElement::unit(f));
}

TEST(sample, full_spectrum_for_function_algebras) {
    auto f = function_algebra(DegreeGroup(0, {3, 3}));
    std::set<Element> degrees;
    for (const auto &m : f->index_group().elements()) {
        degrees.insert(f->degree(m));
    }
    EXPECT_EQ(degrees.size(), 9u);
}

TEST(sample_state, construction_checks) {
    auto t = nc_torus(alpha());
    EXPECT_NO_THROW(SampleState::trace(t));
    EXPECT_THROW(SampleState(t, {{{0, 0}, ExactScalar(2)}}), Error);
    // Not hermitian: omega(u) = 1 but omega(u*) unset.
    EXPECT_THROW(SampleState(t, {{{0, 0}, 1}, {{1, 0}, 1}}), Error);
    EXPECT_NO_THROW(SampleState(t, {{{0, 0}, 1}, {{1, 0}, Rational(1, 2)}, {{-1, 0}, Rational(1, 2)}}));
}

TEST(sample_state, spectral_support) {
    auto t = nc_torus(alpha());
    EXPECT_EQ(spectral_support(SampleState::trace(t)), (std::set<Element>{{0, 0}}));
    auto f = function_algebra(DegreeGroup(0, {3}));
    std::map<Element, ExactScalar> point;
    for (const auto &m : f->index_group().elements()) {
        point[m] = 1;
    }
    SampleState delta(f, point);
    EXPECT_EQ(spectral_support(delta).size(), 3u);
}

TEST(sample_state, positivity) {
    auto m = clock_shift(3);
    auto window = m->index_group().elements();
    EXPECT_TRUE(state_positivity(SampleState::trace(m), window).positive);

    auto f = function_algebra(DegreeGroup(0, {3, 3}));
    std::map<Element, ExactScalar> ones;
    for (const auto &x : f->index_group().elements()) {
        ones[x] = 1;
    }
    auto verdict = state_positivity(SampleState(f, ones), f->index_group().elements());
    EXPECT_TRUE(verdict.positive);
    EXPECT_NEAR(verdict.min_eigenvalue, 0.0, 1e-9);

    auto t = nc_torus(alpha());
    SampleState bad(t, {{{0, 0}, 1}, {{1, 0}, 2}, {{-1, 0}, 2}});
    auto v = state_positivity(bad, {{0, 0}, {1, 0}});
    EXPECT_FALSE(v.positive);
    EXPECT_NEAR(v.min_eigenvalue, -1.0, 1e-9);
    ASSERT_EQ(v.witness.size(), 2u);
}

TEST(sample, standard_spec_builder) {
    SampleSpec spec;
    spec.kind = SampleKind::NcTorus;
    spec.alpha = Phase(Rational(1, 3));
    spec.names = {"a", "b"};
    auto t = build_standard_sample(spec);
    EXPECT_EQ(t->generator_names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(t->cocycle({1, 0}, {0, 1}), Phase(Rational(1, 3)));
    spec.names = {"a"};
    EXPECT_THROW(build_standard_sample(spec), Error);
    spec = SampleSpec{};
    spec.kind = SampleKind::FunctionAlgebra;
    spec.group = DegreeGroup(0, {2, 2});
    EXPECT_EQ(build_standard_sample(spec)->generator_names(), (std::vector<std::string>{"g1", "g2"}));
}
