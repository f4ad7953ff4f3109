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

#include "gradechain/states.h"

#include <algorithm>
#include <random>
#include <set>

#include "gradechain/error.h"

namespace gradechain {

namespace {

constexpr size_t kMaxWitnesses = 64;

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 stream(uint64_t seed, uint64_t index, uint64_t salt = 0) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index * 4 + salt)));
}

ProductGate gate_on(const std::set<Element> &support, const Bicharacter &v) {
    for (const auto &a : support) {
        for (const auto &b : support) {
            if (!v(a, b).is_zero()) {
                return {false, std::make_pair(a, b)};
            }
        }
    }
    return {true, std::nullopt};
}

std::string pair_str(const std::pair<Element, Element> &p) {
    return "(" + element_str(p.first) + ", " + element_str(p.second) + ")";
}

}  // namespace

ProductGate product_state_exists(const SampleState &omega, const Bicharacter &v) {
    if (!(v.group() == omega.algebra()->degree_group())) {
        throw Error(ErrorKind::WrongGroup, "bicharacter and state use different degree groups");
    }
    return gate_on(spectral_support(omega), v);
}

// ---------------------------------------------------------------- ChainState

ChainState::ChainState(Kind kind, ChainContextPtr context) : kind_(kind), context_(std::move(context)) {
}

ChainState ChainState::product(ChainContextPtr context, SampleState omega) {
    if (omega.algebra() != context->sample()) {
        throw Error(ErrorKind::ContextMismatch, "state does not live on the chain sample");
    }
    ProductGate gate = product_state_exists(omega, context->bicharacter());
    if (!gate.exists) {
        throw Error(ErrorKind::BadParameter, "no product state: v does not vanish at " + pair_str(*gate.witness));
    }
    ChainState s(Kind::Product, std::move(context));
    s.site_states_.push_back(std::move(omega));
    return s;
}

ChainState ChainState::pinned(ChainContextPtr context,
                              std::map<SiteIndex, SampleState> sites,
                              SampleState fallback,
                              int64_t period) {
    if (period < 0) {
        throw Error(ErrorKind::BadParameter, "negative period");
    }
    ChainState s(Kind::Pinned, context);
    s.period_ = period;
    s.site_states_.push_back(std::move(fallback));
    for (auto &[site, omega] : sites) {
        if (period > 0 && (!site.is_integer() || site.num() < 0 || site.num() >= period)) {
            throw Error(ErrorKind::BadParameter, "periodic table key " + site.str() + " is not a residue");
        }
        s.pinned_[site] = s.site_states_.size();
        s.site_states_.push_back(std::move(omega));
    }
    std::set<Element> support;
    for (const auto &omega : s.site_states_) {
        if (omega.algebra() != context->sample()) {
            throw Error(ErrorKind::ContextMismatch, "state does not live on the chain sample");
        }
        auto part = gradechain::spectral_support(omega);
        support.insert(part.begin(), part.end());
    }
    ProductGate gate = gate_on(support, context->bicharacter());
    if (!gate.exists) {
        throw Error(ErrorKind::BadParameter, "no pinned product state: v does not vanish at " + pair_str(*gate.witness));
    }
    return s;
}

ChainState ChainState::mixture(std::vector<std::pair<Rational, ChainState>> components) {
    if (components.empty()) {
        throw Error(ErrorKind::BadParameter, "empty mixture");
    }
    ChainState s(Kind::Mixture, components.front().second.context());
    Rational total;
    for (auto &[w, phi] : components) {
        if (w <= Rational(0)) {
            throw Error(ErrorKind::BadParameter, "mixture weight " + w.str() + " is not positive");
        }
        if (phi.context() != s.context_) {
            throw Error(ErrorKind::ContextMismatch, "mixture components live on different chains");
        }
        total += w;
        s.components_.emplace_back(w, std::make_shared<const ChainState>(std::move(phi)));
    }
    if (total != Rational(1)) {
        throw Error(ErrorKind::BadParameter, "mixture weights sum to " + total.str());
    }
    return s;
}

std::string ChainState::describe() const {
    switch (kind_) {
        case Kind::Product:
            return "product";
        case Kind::Pinned:
            return period_ > 0 ? "pinned(period " + std::to_string(period_) + ")" : "pinned";
        case Kind::Mixture: {
            std::string out = "mixture(";
            for (size_t k = 0; k < components_.size(); ++k) {
                out += (k ? ", " : "") + components_[k].first.str() + " " + components_[k].second->describe();
            }
            return out + ")";
        }
    }
    return "";
}

const SampleState &ChainState::site_state(const SiteIndex &s) const {
    switch (kind_) {
        case Kind::Product:
            return site_states_[0];
        case Kind::Pinned: {
            SiteIndex key = s;
            if (period_ > 0) {
                int64_t r = s.floor() % period_;
                key = SiteIndex(r < 0 ? r + period_ : r);
            }
            auto it = pinned_.find(key);
            return site_states_[it == pinned_.end() ? 0 : it->second];
        }
        case Kind::Mixture:
            break;
    }
    throw Error(ErrorKind::BadParameter, "a mixture has no single site state");
}

std::set<Element> ChainState::spectral_support() const {
    std::set<Element> out;
    for (const auto &omega : site_states_) {
        auto part = gradechain::spectral_support(omega);
        out.insert(part.begin(), part.end());
    }
    for (const auto &[w, phi] : components_) {
        auto part = phi->spectral_support();
        out.insert(part.begin(), part.end());
    }
    return out;
}

ExactScalar ChainState::monomial_value(const ChainMonomial &m) const {
    if (kind_ == Kind::Mixture) {
        ExactScalar total;
        for (const auto &[w, phi] : components_) {
            total += phi->monomial_value(m).scaled(w);
        }
        return total;
    }
    ExactScalar value(1);
    for (const auto &f : m) {
        value = value * site_state(f.site)(f.exponent);
        if (value.is_zero()) {
            break;
        }
    }
    return value;
}

ExactScalar ChainState::operator()(const ChainElement &x) const {
    if (x.context() != context_) {
        throw Error(ErrorKind::ContextMismatch, "element and state live on different chains");
    }
    ExactScalar total;
    for (const auto &[m, c] : x.support()) {
        total += c * monomial_value(m);
    }
    return total;
}

// ---------------------------------------------------------------- FreeMonomial

FreeMonomial FreeMonomial::from_factors(const SampleAlgebraPtr &sample, const std::vector<ChainFactor> &factors) {
    FreeMonomial m;
    for (const auto &f : factors) {
        m.letters.emplace_back(f.site, SampleElement::basis(sample, f.exponent));
    }
    return m;
}

FreeMonomial FreeMonomial::parse(const SampleAlgebraPtr &sample, std::string_view text) {
    return from_factors(sample, parse_factors(*sample, text));
}

ChainElement FreeMonomial::multiply(const ChainContextPtr &context) const {
    ChainElement out = ChainElement::unit(context);
    for (const auto &[site, a] : letters) {
        out = out * ChainElement::embed(context, site, a);
    }
    return out;
}

FreeMonomial FreeMonomial::relabeled(const SiteMap &f) const {
    FreeMonomial out = *this;
    for (auto &letter : out.letters) {
        letter.first = f(letter.first);
    }
    return out;
}

FreeMonomial FreeMonomial::star() const {
    FreeMonomial out;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        out.letters.emplace_back(it->first, it->second.star());
    }
    return out;
}

std::vector<SiteIndex> FreeMonomial::sites() const {
    std::set<SiteIndex> s;
    for (const auto &letter : letters) {
        s.insert(letter.first);
    }
    return {s.begin(), s.end()};
}

std::string FreeMonomial::str() const {
    if (letters.empty()) {
        return "1";
    }
    std::string out;
    for (const auto &[site, a] : letters) {
        if (!out.empty()) {
            out += " ";
        }
        const auto &support = a.support();
        if (support.size() == 1 && support.begin()->second == ExactScalar(1)) {
            out += "i[" + site.str() + "](" + a.algebra()->basis_str(support.begin()->first) + ")";
        } else {
            out += "i[" + site.str() + "](" + a.str() + ")";
        }
    }
    return out;
}

ExactScalar eval_monomial(const ChainState &phi, const FreeMonomial &m) {
    return phi(m.multiply(phi.context()));
}

// ---------------------------------------------------------------- batteries

std::vector<FreeMonomial> canonical_battery(const SampleAlgebraPtr &sample) {
    const DegreeGroup &idx = sample->index_group();
    std::vector<ChainFactor> letters;
    for (int64_t site : {1, 2}) {
        std::set<Element> seen;
        for (size_t g = 0; g < idx.rank(); ++g) {
            for (int64_t sign : {1, -1}) {
                Element e = idx.scale(idx.generator(g), sign);
                if (seen.insert(e).second) {
                    letters.push_back({SiteIndex(site), e});
                }
            }
        }
    }
    std::vector<FreeMonomial> out;
    std::vector<std::vector<size_t>> words{{}};
    for (int len = 1; len <= 4; ++len) {
        std::vector<std::vector<size_t>> next;
        for (const auto &w : words) {
            for (size_t l = 0; l < letters.size(); ++l) {
                auto longer = w;
                longer.push_back(l);
                std::vector<ChainFactor> factors;
                for (size_t k : longer) {
                    factors.push_back(letters[k]);
                }
                out.push_back(FreeMonomial::from_factors(sample, factors));
                next.push_back(std::move(longer));
            }
        }
        words = std::move(next);
    }
    return out;
}

FreeMonomial random_monomial(const SampleAlgebraPtr &sample, const AuditBudget &budget, uint64_t index) {
    auto rng = stream(budget.seed, index);
    const DegreeGroup &idx = sample->index_group();
    int max_sites = std::max(1, budget.max_sites);
    int nsites = 1 + (int)(rng() % max_sites);
    std::vector<int64_t> pool(2 * max_sites);
    for (size_t k = 0; k < pool.size(); ++k) {
        pool[k] = (int64_t)k;
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(nsites);
    int nletters = 1 + (int)(rng() % std::max(1, budget.max_letters));
    int64_t span = 2 * (int64_t)budget.exponent_bound + 1;
    std::vector<ChainFactor> factors;
    for (int k = 0; k < nletters; ++k) {
        Element e(idx.rank());
        for (auto &c : e) {
            c = (int64_t)(rng() % span) - budget.exponent_bound;
        }
        factors.push_back({SiteIndex(pool[rng() % nsites]), idx.reduce(e)});
    }
    return FreeMonomial::from_factors(sample, factors);
}

namespace {

SiteMap transposition(const std::vector<SiteIndex> &sites, const SiteIndex &a, const SiteIndex &b) {
    std::map<SiteIndex, SiteIndex> table;
    for (const auto &s : sites) {
        table[s] = s;
    }
    table[a] = b;
    table[b] = a;
    return SiteMap("swap(" + a.str() + "," + b.str() + ")", [table](const SiteIndex &s) {
        auto it = table.find(s);
        return it == table.end() ? s : it->second;
    });
}

std::vector<SiteMap> spreading_maps(const std::vector<SiteIndex> &sites, uint64_t seed, uint64_t index) {
    std::vector<SiteMap> maps;
    if (sites.empty()) {
        return maps;
    }
    int64_t lo = sites.front().floor();
    int64_t hi = sites.back().floor();
    for (int64_t h = lo; h <= hi + 1; ++h) {
        maps.push_back(SiteMap::partial_shift(h));
    }
    maps.push_back(SiteMap::shift(1));
    maps.push_back(SiteMap::thick_partial_shift(0));
    maps.push_back(SiteMap::thick_partial_shift(1));
    maps.push_back(SiteMap::dyadic_translation(1, 0));
    maps.push_back(SiteMap::dyadic_translation(1, 1));
    auto rng = stream(seed, index, 1);
    for (int k = 0; k < 2; ++k) {
        int64_t range = 3 * (hi - lo + 1) + 6;
        std::set<int64_t> targets;
        while (targets.size() < sites.size()) {
            targets.insert(lo + (int64_t)(rng() % range));
        }
        std::map<SiteIndex, SiteIndex> table;
        auto it = targets.begin();
        std::string name = "increasing{";
        for (const auto &s : sites) {
            table[s] = SiteIndex(*it);
            name += (s == sites.front() ? "" : ",") + s.str() + "->" + std::to_string(*it);
            ++it;
        }
        maps.push_back(SiteMap(name + "}", [table](const SiteIndex &s) { return table.at(s); }));
    }
    return maps;
}

std::vector<SiteMap> exchange_maps(const std::vector<SiteIndex> &sites, uint64_t seed, uint64_t index) {
    std::vector<SiteMap> maps;
    if (sites.empty()) {
        return maps;
    }
    for (size_t k = 0; k + 1 < sites.size(); ++k) {
        maps.push_back(transposition(sites, sites[k], sites[k + 1]));
    }
    maps.push_back(transposition(sites, sites.back(), sites.back() + SiteIndex(1)));
    // Each increasing map agrees on the occurring sites with a finitary
    // permutation, so the spreading battery is part of this one.
    for (auto &f : spreading_maps(sites, seed, index)) {
        maps.push_back(SiteMap("perm " + f.name(), [f](const SiteIndex &s) { return f(s); }));
    }
    return maps;
}

using MapFamily = std::function<std::vector<SiteMap>(const std::vector<SiteIndex> &, uint64_t index)>;

AuditReport run_audit(const ChainState &phi, const AuditBudget &budget, const MapFamily &family) {
    AuditReport report;
    report.seed = budget.seed;
    const auto &sample = phi.context()->sample();
    auto check = [&](const FreeMonomial &m, uint64_t index) {
        ExactScalar value = eval_monomial(phi, m);
        for (const auto &f : family(m.sites(), index)) {
            ExactScalar mapped = eval_monomial(phi, m.relabeled(f));
            if (!(mapped == value)) {
                report.pass = false;
                ++report.failures;
                if (report.witnesses.size() < kMaxWitnesses) {
                    report.witnesses.push_back({m.str(), f.name(), value, mapped});
                }
            }
        }
        ++report.samples_run;
    };
    uint64_t index = 0;
    if (budget.canonical) {
        for (const auto &m : canonical_battery(sample)) {
            check(m, index++);
        }
    }
    for (int k = 0; k < budget.samples; ++k) {
        check(random_monomial(sample, budget, k), index++);
    }
    return report;
}

}  // namespace

AuditReport audit_exchangeable(const ChainState &phi, const AuditBudget &budget) {
    return run_audit(phi, budget, [&](const std::vector<SiteIndex> &sites, uint64_t index) {
        return exchange_maps(sites, budget.seed, index);
    });
}

AuditReport audit_spreadable(const ChainState &phi, const AuditBudget &budget) {
    return run_audit(phi, budget, [&](const std::vector<SiteIndex> &sites, uint64_t index) {
        return spreading_maps(sites, budget.seed, index);
    });
}

AuditReport audit_stationary(const ChainState &phi, const AuditBudget &budget, int64_t shift) {
    if (shift <= 0) {
        throw Error(ErrorKind::BadParameter, "stationarity shift must be positive");
    }
    return run_audit(phi, budget, [shift](const std::vector<SiteIndex> &, uint64_t) {
        return std::vector<SiteMap>{SiteMap::shift(shift)};
    });
}

RnReport rn_audit(const ChainState &phi, const Bicharacter &v, const AuditBudget &budget) {
    RnReport r;
    r.exchangeable = audit_exchangeable(phi, budget);
    r.spreadable = audit_spreadable(phi, budget);
    r.antisymmetric = bichar_classify(v).antisymmetric;
    r.verdict = std::string(r.spreadable.pass ? "spreadable" : "¬spreadable") + " ∧ " +
                (r.exchangeable.pass ? "exchangeable" : "¬exchangeable");
    r.rn_exempt = !r.antisymmetric;
    r.violation = r.antisymmetric && r.spreadable.pass && !r.exchangeable.pass;
    return r;
}

// ---------------------------------------------------------------- predicates

PairVerdict h_abelian_sufficient(const Bicharacter &v) {
    IsotropySet delta = delta_v(v);
    Bicharacter vs = symmetrized(v);
    for (const auto &x : delta.elements) {
        for (const auto &y : delta.elements) {
            if (!v(x, y).is_zero() && vs(x, y).is_zero()) {
                return {false, std::make_pair(x, y)};
            }
        }
    }
    return {true, std::nullopt};
}

bool poulsen_condition(const Bicharacter &v) {
    IsotropySet delta = delta_v(v);
    for (const auto &x : delta.elements) {
        for (const auto &y : delta.elements) {
            if (!v(x, y).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

WitnessSearch h_abelian_witness_search(const Bicharacter &v,
                                       const std::vector<ChainState> &states,
                                       const AuditBudget &budget) {
    WitnessSearch result;
    for (size_t si = 0; si < states.size(); ++si) {
        const ChainState &phi = states[si];
        const auto &ctx = phi.context();
        const SampleAlgebra &sample = *ctx->sample();
        if (!(v.group() == sample.degree_group())) {
            throw Error(ErrorKind::WrongGroup, "bicharacter does not match the state's chain");
        }
        auto isotropic = [&](const Element &d) { return v(d, d).is_zero(); };
        auto try_pair = [&](const ChainMonomial &a, const ChainMonomial &b) {
            Element da = ctx->monomial_degree(a);
            Element db = ctx->monomial_degree(b);
            if (!isotropic(da) || !isotropic(db) || v(da, db).is_zero()) {
                return false;
            }
            ++result.candidates;
            ExactScalar value = phi(ChainElement::monomial(ctx, a) * ChainElement::monomial(ctx, b));
            if (value.is_zero()) {
                return false;
            }
            result.witness = HAbelianWitness{si, ctx->monomial_str(a), ctx->monomial_str(b), value};
            result.inconclusive = false;
            return true;
        };

        const DegreeGroup &idx = sample.index_group();
        std::set<Element> box;
        std::vector<int64_t> coords(idx.rank(), -budget.exponent_bound);
        while (true) {
            box.insert(idx.reduce(coords));
            size_t k = 0;
            while (k < coords.size() && coords[k] == budget.exponent_bound) {
                coords[k++] = -budget.exponent_bound;
            }
            if (k == coords.size()) {
                break;
            }
            ++coords[k];
        }
        box.erase(idx.zero());
        for (const auto &m : box) {
            for (const auto &n : box) {
                if (try_pair({{SiteIndex(0), m}}, {{SiteIndex(1), n}})) {
                    return result;
                }
            }
        }
        std::vector<Element> pool(box.begin(), box.end());
        int half = std::max(1, budget.max_sites / 2);
        for (int k = 0; k < budget.samples && !pool.empty(); ++k) {
            auto rng = stream(budget.seed, k, 2 + si);
            auto pick = [&](int first) {
                ChainMonomial m;
                for (int s = first; s < first + half; ++s) {
                    if (rng() % 2) {
                        m.push_back({SiteIndex(s), pool[rng() % pool.size()]});
                    }
                }
                return m;
            };
            ChainMonomial a = pick(0);
            ChainMonomial b = pick(half);
            if (!a.empty() && !b.empty() && try_pair(a, b)) {
                return result;
            }
        }
    }
    return result;
}

}  // namespace gradechain
