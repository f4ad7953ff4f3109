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

#ifndef GRADECHAIN_CHAIN_H
#define GRADECHAIN_CHAIN_H

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gradechain/degrees.h"
#include "gradechain/sample.h"
#include "gradechain/scalars.h"

namespace gradechain {

/// A dyadic rational num / 2^exp in lowest terms.
class SiteIndex {
   public:
    SiteIndex(int64_t value = 0) : num_(value), exp_(0) {  // NOLINT(google-explicit-constructor)
    }
    static SiteIndex dyadic(int64_t num, int exp);
    static SiteIndex parse(std::string_view text);

    int64_t num() const {
        return num_;
    }
    int exp() const {
        return exp_;
    }
    bool is_integer() const {
        return exp_ == 0;
    }
    /// Largest integer not above the site.
    int64_t floor() const;

    SiteIndex operator+(const SiteIndex &o) const;
    SiteIndex operator-(const SiteIndex &o) const;
    /// Multiplies by 2^k, k of either sign.
    SiteIndex times_pow2(int k) const;

    std::strong_ordering operator<=>(const SiteIndex &o) const;
    bool operator==(const SiteIndex &o) const = default;
    std::string str() const;

   private:
    int64_t num_;
    int exp_;
};

/// A named map on sites, meant to be strictly increasing.
class SiteMap {
   public:
    SiteMap(std::string name, std::function<SiteIndex(const SiteIndex &)> fn);

    static SiteMap identity();
    /// tau^k
    static SiteMap shift(int64_t k);
    /// theta_h: d below h is fixed, the rest moves up by one.
    static SiteMap partial_shift(int64_t h);
    /// Thickened partial shift at scale 2^-n.
    static SiteMap thick_partial_shift(int n);
    /// r -> r + k / 2^n
    static SiteMap dyadic_translation(int64_t k, int n);
    /// r -> 2^n r
    static SiteMap dilation(int n);
    /// Finite table; sites outside the table are rejected when applied.
    static SiteMap table(std::map<SiteIndex, SiteIndex> entries);
    /// outer after inner.
    static SiteMap compose(const SiteMap &outer, const SiteMap &inner);

    SiteIndex operator()(const SiteIndex &s) const {
        return fn_(s);
    }
    const std::string &name() const {
        return name_;
    }

   private:
    std::string name_;
    std::function<SiteIndex(const SiteIndex &)> fn_;
};

using SitePermutation = std::map<SiteIndex, SiteIndex>;

struct ChainFactor {
    SiteIndex site;
    Element exponent;
    auto operator<=>(const ChainFactor &o) const = default;
};

/// Normal-ordered product of single-site basis elements.
using ChainMonomial = std::vector<ChainFactor>;

/// Sample algebra plus the bicharacter twisting distinct sites.
class ChainContext {
   public:
    ChainContext(SampleAlgebraPtr sample, Bicharacter v);

    const SampleAlgebraPtr &sample() const {
        return sample_;
    }
    const Bicharacter &bicharacter() const {
        return v_;
    }
    const BicharClass &bicharacter_class() const {
        return class_;
    }
    /// Symbol table shared by the sample cocycle and v, if any.
    SymbolTablePtr symbols() const;
    Element monomial_degree(const ChainMonomial &m) const;
    std::string monomial_str(const ChainMonomial &m) const;

   private:
    SampleAlgebraPtr sample_;
    Bicharacter v_;
    BicharClass class_;
};

using ChainContextPtr = std::shared_ptr<const ChainContext>;

ChainContextPtr make_chain(SampleAlgebraPtr sample, Bicharacter v);

class ChainElement {
   public:
    explicit ChainElement(ChainContextPtr context);
    static ChainElement unit(ChainContextPtr context);
    /// Basis monomial; the factors must already be in normal order.
    static ChainElement monomial(ChainContextPtr context, ChainMonomial m, ExactScalar coefficient = 1);
    /// i_site(x)
    static ChainElement embed(ChainContextPtr context, const SiteIndex &site, const SampleElement &x);
    /// i_site(b_m)
    static ChainElement basis(ChainContextPtr context, const SiteIndex &site, const Element &m);

    const ChainContextPtr &context() const {
        return context_;
    }
    const std::map<ChainMonomial, ExactScalar> &support() const {
        return support_;
    }
    bool is_zero() const {
        return support_.empty();
    }
    std::vector<SiteIndex> sites() const;

    ChainElement operator+(const ChainElement &o) const;
    ChainElement operator-(const ChainElement &o) const;
    ChainElement operator*(const ChainElement &o) const;
    ChainElement scaled(const ExactScalar &s) const;
    bool operator==(const ChainElement &o) const;
    std::string str() const;

    void add_term(const ChainMonomial &m, const ExactScalar &c);

   private:
    ChainContextPtr context_;
    std::map<ChainMonomial, ExactScalar> support_;
};

ChainElement chain_mul(const ChainElement &x, const ChainElement &y);
ChainElement chain_star(const ChainElement &x);
ChainElement apply_monotone(const ChainElement &x, const SiteMap &f);
ChainElement apply_permutation(const ChainElement &x, const SitePermutation &sigma);
ChainElement chain_expectation(const ChainElement &x, const Subgroup &s);

/// Left regular representation on a fixed window of sites, built from dense
/// exponent arrays and the global 2-cocycle.
class RegularRepOracle {
   public:
    RegularRepOracle(ChainContextPtr context, std::vector<SiteIndex> window);

    const std::vector<SiteIndex> &window() const {
        return window_;
    }
    /// Global cocycle C(x, y) with b_x b_y = e(C(x, y)) b_{x*y}.
    Phase cocycle(const ChainMonomial &x, const ChainMonomial &y) const;
    ChainMonomial product_index(const ChainMonomial &x, const ChainMonomial &y) const;
    /// rho(b_x) applied to f.
    ChainElement act(const ChainMonomial &x, const ChainElement &f) const;

   private:
    using Dense = std::vector<Element>;
    Dense densify(const ChainMonomial &m) const;
    ChainMonomial sparsify(const Dense &d) const;

    ChainContextPtr context_;
    std::vector<SiteIndex> window_;
};

struct RegularRepEntry {
    ChainMonomial x;
    ChainMonomial y;
    ChainMonomial product;
    Phase phase;
};

/// Full multiplication table of the given basis monomials.
std::vector<RegularRepEntry> regular_rep_table(const RegularRepOracle &oracle, const std::vector<ChainMonomial> &basis);

/// Letters i_site(b_m) in the order written, e.g. "i[0](u^1 w^0) i[1/2](u^-1)".
std::vector<ChainFactor> parse_factors(const SampleAlgebra &sample, std::string_view text);

/// Sum of terms "(scalar) letters", multiplied out in the chain.
ChainElement parse_chain_element(const ChainContextPtr &context, std::string_view text);

}  // namespace gradechain

#endif
