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

#ifndef GRADECHAIN_STATES_H
#define GRADECHAIN_STATES_H

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradechain/chain.h"

namespace gradechain {

struct ProductGate {
    bool exists;
    /// A pair of support degrees on which v does not vanish.
    std::optional<std::pair<Element, Element>> witness;
};

/// A product state exists iff v vanishes on supp(omega) x supp(omega).
ProductGate product_state_exists(const SampleState &omega, const Bicharacter &v);

class ChainState {
   public:
    enum class Kind { Product, Pinned, Mixture };

    /// Infinite product of omega. Throws BadParameter if the gate fails.
    static ChainState product(ChainContextPtr context, SampleState omega);
    /// Site s uses sites[s] when listed and fallback otherwise. With a period
    /// p > 0 the table is keyed by residues: site s uses sites[floor(s) mod p].
    static ChainState pinned(ChainContextPtr context,
                             std::map<SiteIndex, SampleState> sites,
                             SampleState fallback,
                             int64_t period = 0);
    /// Convex combination; weights must be positive and sum to 1.
    static ChainState mixture(std::vector<std::pair<Rational, ChainState>> components);

    Kind kind() const {
        return kind_;
    }
    const ChainContextPtr &context() const {
        return context_;
    }
    std::string describe() const;

    /// Value on a chain element.
    ExactScalar operator()(const ChainElement &x) const;
    /// The sample state used at a site (Product and Pinned only).
    const SampleState &site_state(const SiteIndex &s) const;
    /// Union of the spectral supports of every sample state involved.
    std::set<Element> spectral_support() const;

   private:
    ChainState(Kind kind, ChainContextPtr context);
    ExactScalar monomial_value(const ChainMonomial &m) const;

    Kind kind_;
    ChainContextPtr context_;
    std::vector<SampleState> site_states_;
    std::map<SiteIndex, size_t> pinned_;
    int64_t period_ = 0;
    std::vector<std::pair<Rational, std::shared_ptr<const ChainState>>> components_;
};

/// Letters i_site(a) in an arbitrary site order.
struct FreeMonomial {
    std::vector<std::pair<SiteIndex, SampleElement>> letters;

    static FreeMonomial from_factors(const SampleAlgebraPtr &sample, const std::vector<ChainFactor> &factors);
    static FreeMonomial parse(const SampleAlgebraPtr &sample, std::string_view text);
    /// Normal-ordered product in the chain.
    ChainElement multiply(const ChainContextPtr &context) const;
    FreeMonomial relabeled(const SiteMap &f) const;
    FreeMonomial star() const;
    std::vector<SiteIndex> sites() const;
    std::string str() const;
};

ExactScalar eval_monomial(const ChainState &phi, const FreeMonomial &m);

struct AuditBudget {
    int samples = 500;
    int max_sites = 5;
    int max_letters = 6;
    int exponent_bound = 2;
    uint64_t seed = 0;
    /// Include the deterministic two-site battery.
    bool canonical = true;
};

struct AuditWitness {
    std::string monomial;
    std::string map;
    ExactScalar value;
    ExactScalar mapped_value;
};

struct AuditReport {
    bool pass = true;
    std::vector<AuditWitness> witnesses;
    /// Number of monomials checked (battery plus random).
    size_t samples_run = 0;
    size_t failures = 0;
    uint64_t seed = 0;
};

/// All words of length 1..4 in the letters i_s(g^{+-1}), s in {1, 2}, g a
/// generator of the sample index group.
std::vector<FreeMonomial> canonical_battery(const SampleAlgebraPtr &sample);

/// The i-th random monomial of a budget; depends only on (seed, i).
FreeMonomial random_monomial(const SampleAlgebraPtr &sample, const AuditBudget &budget, uint64_t index);

AuditReport audit_exchangeable(const ChainState &phi, const AuditBudget &budget = {});
AuditReport audit_spreadable(const ChainState &phi, const AuditBudget &budget = {});
AuditReport audit_stationary(const ChainState &phi, const AuditBudget &budget = {}, int64_t shift = 1);

struct RnReport {
    AuditReport exchangeable;
    AuditReport spreadable;
    bool antisymmetric = false;
    /// "spreadable ∧ exchangeable" and the like.
    std::string verdict;
    /// v is not antisymmetric, so spreadable need not imply exchangeable.
    bool rn_exempt = false;
    /// Spreadable passed but exchangeable failed with antisymmetric v.
    bool violation = false;
};

RnReport rn_audit(const ChainState &phi, const Bicharacter &v, const AuditBudget &budget = {});

struct PairVerdict {
    bool holds;
    std::optional<std::pair<Element, Element>> witness;
};

/// For all x, y in Delta_v: v(x, y) = 0 or v_S(x, y) != 0.
PairVerdict h_abelian_sufficient(const Bicharacter &v);

/// v vanishes on Delta_v x Delta_v.
bool poulsen_condition(const Bicharacter &v);

struct HAbelianWitness {
    size_t state_index;
    std::string a;
    std::string b;
    ExactScalar value;
};

struct WitnessSearch {
    std::optional<HAbelianWitness> witness;
    /// No witness found; says nothing about states outside the family.
    bool inconclusive = true;
    size_t candidates = 0;
};

/// Looks for homogeneous a, b with a left of b, degrees in Delta_v,
/// v(deg a, deg b) != 0 and phi(ab) != 0.
WitnessSearch h_abelian_witness_search(const Bicharacter &v,
                                       const std::vector<ChainState> &states,
                                       const AuditBudget &budget = {});

}  // namespace gradechain

#endif
