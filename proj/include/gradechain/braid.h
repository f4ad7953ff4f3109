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

#ifndef GRADECHAIN_BRAID_H
#define GRADECHAIN_BRAID_H

#include <map>
#include <string>
#include <optional>
#include <tuple>
#include <vector>

#include "gradechain/chain.h"
#include "gradechain/states.h"

namespace gradechain {

/// Candidate action of the braid generators sigma_1, sigma_2, ... on a window
/// of integer sites 0..window-1. Each sigma_i is given by the images of the
/// single-site generators i_j(e_g); unlisted letters are fixed. Images extend
/// multiplicatively, negative powers going through the involution.
class BraidAction {
   public:
    BraidAction(ChainContextPtr context, int window, std::string name);

    const ChainContextPtr &context() const {
        return context_;
    }
    int window() const {
        return window_;
    }
    const std::string &name() const {
        return name_;
    }

    void set_image(int generator, int64_t site, size_t sample_generator, ChainElement image);
    /// Throws BadParameter unless every image is unitary and respects the
    /// order of torsion generators.
    void check_unitary() const;

    ChainElement apply(int generator, const ChainElement &x) const;
    /// Applies the rightmost generator first.
    ChainElement apply_word(const std::vector<int> &word, const ChainElement &x) const;

   private:
    ChainElement letter_image(int generator, const SiteIndex &site, const Element &exponent) const;

    ChainContextPtr context_;
    int window_;
    std::string name_;
    std::map<std::tuple<int, int64_t, size_t>, ChainElement> images_;
};

BraidAction identity_braid_action(ChainContextPtr context, int window);

/// sigma_i swaps sites i-1 and i. Throws NotPermutable unless v is antisymmetric.
BraidAction transposition_braid_action(ChainContextPtr context, int window);

/// sigma_i(u_{i-1}) = u_i, sigma_i(u_i) = e(phase) u_{i-1}^* u_i^2 on the
/// one-unitary circle chain with v(k, l) = theta k l. The phase defaults to
/// theta, the only value satisfying Yang-Baxter. Throws BadChain on any other
/// chain.
BraidAction build_torus_braid_action(ChainContextPtr context, int window, std::optional<Phase> phase = {});

struct BraidSection {
    std::string name;
    bool pass = true;
    size_t checks = 0;
    std::vector<std::string> failures;
};

struct BraidReport {
    bool pass = true;
    std::vector<BraidSection> sections;
    const BraidSection *section(const std::string &name) const;
};

/// Basis monomials on sites 0..window-1 whose total exponent weight is at
/// most max_degree (weights of torsion coordinates use the shorter way round).
std::vector<ChainMonomial> window_monomials(const ChainContext &context, int window, int max_degree);

/// Far commutation, Yang-Baxter and multiplicativity on generator pairs.
/// Throws WindowTooSmall for windows under 3 sites or beyond the action.
BraidReport verify_artin_relations(const BraidAction &rho, int window, int max_degree);

/// braid1, braid2 and invariance of phi under each sigma_i.
/// Throws WindowTooSmall for windows under 2 sites or beyond the action.
BraidReport verify_braidability(const BraidAction &rho, const ChainState &phi, int window, int max_degree);

/// Declares {1, theta, alpha} rationally independent.
struct IndependenceModel {
    SymbolTablePtr table;
    std::string theta = "theta";
    std::string alpha = "alpha";
};

struct ObstructionStep {
    /// "rel3", "i_r", "i_42", "i_2bis" or "i_3bis".
    std::string source;
    /// "relation", "constraint" or "contradiction".
    std::string kind;
    std::string statement;
    /// Machine form, e.g. "q2=0" or "j1=2&j1=0".
    std::string key;
};

struct ObstructionTrace {
    int window = 0;
    bool omit_site0 = false;
    std::vector<ObstructionStep> steps;
    bool feasible = true;
    /// Exponents of a consistent candidate when feasible.
    std::map<std::string, int64_t> witness;
    std::string contradiction;
};

struct ObstructionOptions {
    /// Drop the unknowns j_0, q_0.
    bool omit_site0 = false;
};

/// Coefficient matching for sigma_1(u_1) on the torus-pair chain with
/// candidate exponents j_i, q_i at sites 0..N. Throws ModelMismatch unless
/// the model declares exactly {theta, alpha} independent.
ObstructionTrace obstruction_solve(const IndependenceModel &model, int window, ObstructionOptions options = {});

}  // namespace gradechain

#endif
