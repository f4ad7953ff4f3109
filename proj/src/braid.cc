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

#include "gradechain/braid.h"

#include <algorithm>
#include <functional>
#include <set>

#include "gradechain/error.h"
#include "gradechain/models.h"

namespace gradechain {

// ---------------------------------------------------------------- BraidAction

BraidAction::BraidAction(ChainContextPtr context, int window, std::string name)
    : context_(std::move(context)), window_(window), name_(std::move(name)) {
    if (window < 1) {
        throw Error(ErrorKind::WindowTooSmall, "braid window needs at least one site");
    }
}

void BraidAction::set_image(int generator, int64_t site, size_t sample_generator, ChainElement image) {
    if (generator < 1 || generator >= window_) {
        throw Error(ErrorKind::BadParameter, "sigma_" + std::to_string(generator) + " is outside the window");
    }
    if (site < 0 || site >= window_) {
        throw Error(ErrorKind::BadParameter, "site " + std::to_string(site) + " is outside the window");
    }
    if (sample_generator >= context_->sample()->index_group().rank()) {
        throw Error(ErrorKind::BadParameter, "unknown sample generator");
    }
    if (image.context() != context_) {
        throw Error(ErrorKind::ContextMismatch, "braid image lives on another chain");
    }
    images_.insert_or_assign({generator, site, sample_generator}, std::move(image));
}

void BraidAction::check_unitary() const {
    const auto &idx = context_->sample()->index_group();
    ChainElement one = ChainElement::unit(context_);
    for (const auto &[key, x] : images_) {
        auto [i, site, g] = key;
        std::string where = "sigma_" + std::to_string(i) + " on site " + std::to_string(site);
        if (!(chain_star(x) * x == one) || !(x * chain_star(x) == one)) {
            throw Error(ErrorKind::BadParameter, "image of " + where + " is not unitary");
        }
        int64_t order = idx.coordinate_order(g);
        if (order != 0) {
            ChainElement p = one;
            for (int64_t k = 0; k < order; ++k) {
                p = p * x;
            }
            if (!(p == one)) {
                throw Error(ErrorKind::BadParameter, "image of " + where + " breaks the generator order");
            }
        }
    }
}

ChainElement BraidAction::letter_image(int generator, const SiteIndex &site, const Element &exponent) const {
    if (!site.is_integer() || images_.empty()) {
        return ChainElement::basis(context_, site, exponent);
    }
    const auto &sample = context_->sample();
    bool touched = false;
    for (size_t g = 0; g < exponent.size(); ++g) {
        touched = touched || (exponent[g] != 0 && images_.count({generator, site.num(), g}));
    }
    if (!touched) {
        return ChainElement::basis(context_, site, exponent);
    }
    // b_m equals a phase times the ordered product of generator powers; the
    // image is that phase times the product of the generator images.
    SampleElement ordered = SampleElement::unit(sample);
    ChainElement image = ChainElement::unit(context_);
    for (size_t g = 0; g < exponent.size(); ++g) {
        if (exponent[g] == 0) {
            continue;
        }
        Element e = sample->index_group().generator(g);
        SampleElement b = SampleElement::basis(sample, e);
        auto it = images_.find({generator, site.num(), g});
        ChainElement x = it == images_.end() ? ChainElement::basis(context_, site, e) : it->second;
        if (exponent[g] < 0) {
            b = b.star();
            x = chain_star(x);
        }
        for (int64_t k = 0; k < std::abs(exponent[g]); ++k) {
            ordered = ordered * b;
            image = image * x;
        }
    }
    const ExactScalar &phase = ordered.support().at(exponent);
    return image.scaled(phase.conj());
}

ChainElement BraidAction::apply(int generator, const ChainElement &x) const {
    if (x.context() != context_) {
        throw Error(ErrorKind::ContextMismatch, "element lives on another chain");
    }
    ChainElement out(context_);
    for (const auto &[m, c] : x.support()) {
        ChainElement term = ChainElement::unit(context_).scaled(c);
        for (const auto &f : m) {
            term = term * letter_image(generator, f.site, f.exponent);
        }
        out = out + term;
    }
    return out;
}

ChainElement BraidAction::apply_word(const std::vector<int> &word, const ChainElement &x) const {
    ChainElement out = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        out = apply(*it, out);
    }
    return out;
}

BraidAction identity_braid_action(ChainContextPtr context, int window) {
    return BraidAction(std::move(context), window, "identity");
}

BraidAction transposition_braid_action(ChainContextPtr context, int window) {
    if (!context->bicharacter_class().antisymmetric) {
        throw Error(ErrorKind::NotPermutable, "transpositions only act when v is antisymmetric");
    }
    BraidAction rho(context, window, "transposition");
    const auto &idx = context->sample()->index_group();
    for (int i = 1; i < window; ++i) {
        for (size_t g = 0; g < idx.rank(); ++g) {
            rho.set_image(i, i - 1, g, ChainElement::basis(context, i, idx.generator(g)));
            rho.set_image(i, i, g, ChainElement::basis(context, i - 1, idx.generator(g)));
        }
    }
    rho.check_unitary();
    return rho;
}

BraidAction build_torus_braid_action(ChainContextPtr context, int window, std::optional<Phase> phase) {
    const SampleAlgebra &sample = *context->sample();
    bool circle = sample.index_group() == DegreeGroup::lattice(1) && sample.degree_group() == DegreeGroup::lattice(1) &&
                  sample.cocycle_matrix()[0][0].is_zero() && sample.degree({1}) == Element{1};
    if (!circle) {
        throw Error(ErrorKind::BadChain, "the torus braid action needs one unitary per site graded by Z");
    }
    Phase twist = phase.value_or(context->bicharacter()({1}, {1}));
    BraidAction rho(context, window, "torus");
    for (int i = 1; i < window; ++i) {
        rho.set_image(i, i - 1, 0, ChainElement::basis(context, i, {1}));
        ChainMonomial m{{SiteIndex(i - 1), {-1}}, {SiteIndex(i), {2}}};
        rho.set_image(i, i, 0, ChainElement::monomial(context, m, ExactScalar::unit(twist)));
    }
    rho.check_unitary();
    return rho;
}

// ---------------------------------------------------------------- verification

const BraidSection *BraidReport::section(const std::string &name) const {
    for (const auto &s : sections) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

namespace {

constexpr size_t kMaxFailures = 16;

int64_t weight(const DegreeGroup &idx, const Element &m) {
    int64_t w = 0;
    for (size_t i = 0; i < m.size(); ++i) {
        int64_t n = idx.coordinate_order(i);
        int64_t a = std::abs(m[i]);
        w += n == 0 ? a : std::min(a % n, n - a % n);
    }
    return w;
}

BraidSection named(std::string name) {
    BraidSection s;
    s.name = std::move(name);
    return s;
}

void record(BraidSection &section, bool ok, const std::function<std::string()> &detail) {
    ++section.checks;
    if (!ok) {
        section.pass = false;
        if (section.failures.size() < kMaxFailures) {
            section.failures.push_back(detail());
        }
    }
}

void finish(BraidReport &report) {
    report.pass = std::all_of(report.sections.begin(), report.sections.end(),
                              [](const BraidSection &s) { return s.pass; });
}

void check_window(const BraidAction &rho, int window, int minimum) {
    if (window < minimum) {
        throw Error(ErrorKind::WindowTooSmall, "window of " + std::to_string(window) + " sites; need at least " +
                                                   std::to_string(minimum));
    }
    if (window > rho.window()) {
        throw Error(ErrorKind::WindowTooSmall, "window of " + std::to_string(window) +
                                                   " sites exceeds the action's window of " +
                                                   std::to_string(rho.window()));
    }
}

std::string word_str(const std::vector<int> &word) {
    std::string out;
    for (int i : word) {
        out += "s" + std::to_string(i);
    }
    return out;
}

}  // namespace

std::vector<ChainMonomial> window_monomials(const ChainContext &context, int window, int max_degree) {
    const DegreeGroup &idx = context.sample()->index_group();
    std::set<Element> letters;
    std::vector<int64_t> coords(idx.rank(), -max_degree);
    while (!coords.empty()) {
        Element e = idx.reduce(coords);
        if (!idx.is_zero(e) && weight(idx, e) <= max_degree) {
            letters.insert(e);
        }
        size_t k = 0;
        while (k < coords.size() && coords[k] == max_degree) {
            coords[k++] = -max_degree;
        }
        if (k == coords.size()) {
            break;
        }
        ++coords[k];
    }
    std::vector<ChainMonomial> out{{}};
    std::vector<std::pair<ChainMonomial, int64_t>> frontier{{{}, 0}};
    for (int s = 0; s < window; ++s) {
        std::vector<std::pair<ChainMonomial, int64_t>> next = frontier;
        for (const auto &[m, w] : frontier) {
            for (const auto &e : letters) {
                int64_t total = w + weight(idx, e);
                if (total <= max_degree) {
                    ChainMonomial longer = m;
                    longer.push_back({SiteIndex(s), e});
                    next.emplace_back(longer, total);
                    out.push_back(longer);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

BraidReport verify_artin_relations(const BraidAction &rho, int window, int max_degree) {
    check_window(rho, window, 3);
    const auto &ctx = rho.context();
    BraidReport report;
    BraidSection far = named("far_commutation"), yb = named("yang_baxter"), hom = named("multiplicative");
    auto monomials = window_monomials(*ctx, window, max_degree);
    for (const auto &m : monomials) {
        ChainElement x = ChainElement::monomial(ctx, m);
        for (int i = 1; i < window; ++i) {
            for (int j = i + 2; j < window; ++j) {
                std::vector<int> a{i, j}, b{j, i};
                record(far, rho.apply_word(a, x) == rho.apply_word(b, x), [&] {
                    return word_str(a) + " != " + word_str(b) + " on " + ctx->monomial_str(m);
                });
            }
            if (i + 1 < window) {
                std::vector<int> a{i, i + 1, i}, b{i + 1, i, i + 1};
                record(yb, rho.apply_word(a, x) == rho.apply_word(b, x), [&] {
                    return word_str(a) + " != " + word_str(b) + " on " + ctx->monomial_str(m);
                });
            }
        }
    }
    const auto &idx = ctx->sample()->index_group();
    std::vector<ChainElement> letters;
    for (int s = 0; s < window; ++s) {
        for (size_t g = 0; g < idx.rank(); ++g) {
            letters.push_back(ChainElement::basis(ctx, s, idx.generator(g)));
        }
    }
    for (int i = 1; i < window; ++i) {
        for (const auto &a : letters) {
            for (const auto &b : letters) {
                record(hom, rho.apply(i, a * b) == rho.apply(i, a) * rho.apply(i, b), [&] {
                    return "s" + std::to_string(i) + " not multiplicative on " + a.str() + " * " + b.str();
                });
            }
        }
    }
    report.sections = {far, yb, hom};
    finish(report);
    return report;
}

BraidReport verify_braidability(const BraidAction &rho, const ChainState &phi, int window, int max_degree) {
    check_window(rho, window, 2);
    const auto &ctx = rho.context();
    if (phi.context() != ctx) {
        throw Error(ErrorKind::ContextMismatch, "state and braid action live on different chains");
    }
    const auto &idx = ctx->sample()->index_group();
    BraidReport report;
    BraidSection b1 = named("braid1"), b2 = named("braid2"), inv = named("invariance");
    for (size_t g = 0; g < idx.rank(); ++g) {
        Element e = idx.generator(g);
        ChainElement at0 = ChainElement::basis(ctx, 0, e);
        for (int n = 1; n < window; ++n) {
            std::vector<int> word;
            for (int k = n; k >= 1; --k) {
                word.push_back(k);
            }
            ChainElement expect = ChainElement::basis(ctx, n, e);
            record(b1, rho.apply_word(word, at0) == expect, [&] {
                return word_str(word) + " on " + at0.str() + " gives " + rho.apply_word(word, at0).str() +
                       ", expected " + expect.str();
            });
        }
        for (int n = 2; n < window; ++n) {
            record(b2, rho.apply(n, at0) == at0, [&] {
                return "s" + std::to_string(n) + " moves " + at0.str() + " to " + rho.apply(n, at0).str();
            });
        }
    }
    for (const auto &m : window_monomials(*ctx, window, max_degree)) {
        ChainElement x = ChainElement::monomial(ctx, m);
        ExactScalar value = phi(x);
        for (int i = 1; i < window; ++i) {
            ExactScalar moved = phi(rho.apply(i, x));
            record(inv, moved == value, [&] {
                return "phi(s" + std::to_string(i) + "(" + ctx->monomial_str(m) + ")) = " + moved.str() +
                       " but phi(x) = " + value.str();
            });
        }
    }
    report.sections = {b1, b2, inv};
    finish(report);
    return report;
}

// ---------------------------------------------------------------- obstruction

namespace {

struct LinearEquation {
    std::map<std::string, Rational> coeffs;
    Rational rhs;
};

struct PhaseEquation {
    std::map<std::string, Phase> coeffs;
    Phase target;

    LinearEquation part(const std::string &symbol) const {
        LinearEquation eq;
        for (const auto &[name, p] : coeffs) {
            Rational c = p.coefficient(symbol);
            if (!c.is_zero()) {
                eq.coeffs[name] = c;
            }
        }
        eq.rhs = target.coefficient(symbol);
        return eq;
    }
};

std::string unknown_label(const std::string &name) {
    return name.substr(0, 1) + "_" + name.substr(1);
}

std::string linear_str(const LinearEquation &eq) {
    std::string out;
    for (const auto &[name, c] : eq.coeffs) {
        std::string mag = (c.num() < 0 ? -c : c) == Rational(1) ? "" : (c.num() < 0 ? -c : c).str() + "*";
        if (out.empty()) {
            out += (c.num() < 0 ? "-" : "") + mag + unknown_label(name);
        } else {
            out += (c.num() < 0 ? " - " : " + ") + mag + unknown_label(name);
        }
    }
    return (out.empty() ? "0" : out) + " = " + eq.rhs.str();
}

class ObstructionSolver {
   public:
    ObstructionSolver(ObstructionTrace &trace, std::set<std::string> unknowns)
        : trace_(trace), unknowns_(std::move(unknowns)) {
    }

    void note(const std::string &source, const std::string &statement, const std::string &key) {
        trace_.steps.push_back({source, "relation", statement, key});
    }

    /// Solves eq for target given every other unknown; returns false on a
    /// contradiction, which ends the derivation.
    bool solve(const LinearEquation &eq, const std::string &target, const std::string &source) {
        if (!trace_.feasible) {
            return false;
        }
        Rational residual = eq.rhs;
        Rational coeff;
        for (const auto &[name, c] : eq.coeffs) {
            if (name == target) {
                coeff = c;
                continue;
            }
            auto it = known_.find(name);
            if (it == known_.end()) {
                throw std::logic_error("obstruction schema uses " + name + " before it is determined");
            }
            residual = residual - c * Rational(it->second);
        }
        if (!unknowns_.count(target) || coeff.is_zero()) {
            if (residual.is_zero()) {
                return true;
            }
            std::string label = unknown_label(target);
            contradict(source, label + " is absent, leaving 0 = " + residual.str() + " from " + linear_str(eq),
                       "0=" + residual.str());
            return false;
        }
        Rational value = residual / coeff;
        std::string label = unknown_label(target);
        if (!value.is_integer()) {
            contradict(source, label + " = " + value.str() + " is not an integer", target + "=" + value.str());
            return false;
        }
        auto it = known_.find(target);
        if (it != known_.end()) {
            if (Rational(it->second) == value) {
                return true;
            }
            contradict(source,
                       label + " = " + std::to_string(it->second) + " and " + label + " = " + value.str(),
                       target + "=" + std::to_string(it->second) + "&" + target + "=" + value.str());
            return false;
        }
        known_[target] = value.num();
        trace_.steps.push_back({source, "constraint", label + " = " + value.str(), target + "=" + value.str()});
        return true;
    }

    const std::map<std::string, int64_t> &known() const {
        return known_;
    }

   private:
    void contradict(const std::string &source, const std::string &statement, const std::string &key) {
        trace_.feasible = false;
        trace_.contradiction = statement;
        trace_.steps.push_back({source, "contradiction", statement, key});
    }

    ObstructionTrace &trace_;
    std::set<std::string> unknowns_;
    std::map<std::string, int64_t> known_;
};

}  // namespace

ObstructionTrace obstruction_solve(const IndependenceModel &model, int window, ObstructionOptions options) {
    if (!model.table || !model.table->independent()) {
        throw Error(ErrorKind::ModelMismatch, "the model must declare its symbols rationally independent");
    }
    std::set<std::string> declared(model.table->symbols().begin(), model.table->symbols().end());
    if (model.theta == model.alpha || declared != std::set<std::string>{model.theta, model.alpha}) {
        throw Error(ErrorKind::ModelMismatch, "the independence set must be exactly {1, " + model.theta + ", " +
                                                  model.alpha + "}");
    }
    if (window < 0) {
        throw Error(ErrorKind::BadParameter, "negative window");
    }
    ObstructionTrace trace;
    trace.window = window;
    trace.omit_site0 = options.omit_site0;
    if (window == 0) {
        return trace;
    }

    Phase theta = Phase::symbol(model.table, model.theta);
    Phase alpha = Phase::symbol(model.table, model.alpha);
    ChainContextPtr ctx = torus_pair_chain(alpha, theta);
    const int first = options.omit_site0 ? 1 : 0;

    struct Unknown {
        std::string name;
        int64_t site;
        Element exponent;
    };
    std::vector<Unknown> unknowns;
    std::set<std::string> names;
    for (int i = first; i <= window; ++i) {
        unknowns.push_back({"j" + std::to_string(i), i, {1, 0}});
        unknowns.push_back({"q" + std::to_string(i), i, {0, 1}});
        names.insert(unknowns[unknowns.size() - 2].name);
        names.insert(unknowns.back().name);
    }

    // c X c* = e(phase) X for each basis letter X of the candidate; the phase
    // is additive in the exponents, so these letters give the coefficients.
    auto conjugation = [&](const ChainElement &c, const Phase &target) {
        PhaseEquation eq;
        eq.target = target;
        for (const auto &u : unknowns) {
            ChainElement x = ChainElement::basis(ctx, u.site, u.exponent);
            ChainElement y = c * x * chain_star(c);
            const auto &support = y.support();
            auto key = x.support().begin()->first;
            const auto &terms = support.at(key).terms();
            if (support.size() != 1 || terms.size() != 1 || terms.begin()->second != Rational(1)) {
                throw std::logic_error("conjugation by a basis monomial is not a phase");
            }
            eq.coeffs[u.name] = terms.begin()->first;
        }
        return eq;
    };
    auto u_at = [&](int64_t r) { return ChainElement::basis(ctx, r, {1, 0}); };
    auto w_at = [&](int64_t r) { return ChainElement::basis(ctx, r, {0, 1}); };

    ObstructionSolver solver(trace, names);
    std::map<int, PhaseEquation> rel3;
    for (int r = 2; r <= window + 1; ++r) {
        rel3[r] = conjugation(u_at(r), -theta);
        solver.note("rel3", "u_" + std::to_string(r) + " s1(u_1) u_" + std::to_string(r) + "* = e(-" + model.theta +
                                ") s1(u_1): " + model.theta + "-part " + linear_str(rel3[r].part(model.theta)) +
                                ", " + model.alpha + "-part " + linear_str(rel3[r].part(model.alpha)),
                    "rel3:r=" + std::to_string(r));
    }
    PhaseEquation two_bis = conjugation(u_at(1), theta);
    solver.note("i_2bis", "u_1 s1(u_1) u_1* = e(" + model.theta + ") s1(u_1): " + model.theta + "-part " +
                              linear_str(two_bis.part(model.theta)) + ", " + model.alpha + "-part " +
                              linear_str(two_bis.part(model.alpha)),
                "i_2bis");
    PhaseEquation three_bis = conjugation(w_at(1), Phase());
    solver.note("i_3bis", "w_1 s1(u_1) w_1* = s1(u_1): " + model.theta + "-part " +
                              linear_str(three_bis.part(model.theta)) + ", " + model.alpha + "-part " +
                              linear_str(three_bis.part(model.alpha)),
                "i_3bis");

    // q_r = 0 for r >= 2 from the alpha-parts.
    for (int r = 2; r <= window; ++r) {
        solver.solve(rel3[r].part(model.alpha), "q" + std::to_string(r), "i_r");
    }
    // Consecutive theta-parts differ by -j_n - j_{n+1}; with j_{N+1} absent
    // this forces j_n = 0 from the top down.
    for (int n = window; n >= 2; --n) {
        LinearEquation upper = rel3[n + 1].part(model.theta);
        LinearEquation lower = rel3[n].part(model.theta);
        LinearEquation diff;
        for (const auto &[name, c] : upper.coeffs) {
            diff.coeffs[name] = c;
        }
        for (const auto &[name, c] : lower.coeffs) {
            diff.coeffs[name] = diff.coeffs[name] - c;
        }
        std::erase_if(diff.coeffs, [](const auto &kv) { return kv.second.is_zero(); });
        diff.rhs = upper.rhs - lower.rhs;
        solver.solve(diff, "j" + std::to_string(n), "i_42");
    }
    solver.solve(two_bis.part(model.alpha), "q1", "i_2bis");
    solver.solve(two_bis.part(model.theta), "j0", "i_2bis");
    if (window >= 1) {
        solver.solve(rel3[2].part(model.theta), "j1", "i_42");
    }
    solver.solve(three_bis.part(model.alpha), "j1", "i_3bis");
    solver.solve(three_bis.part(model.theta), "q0", "i_3bis");

    if (trace.feasible) {
        for (const auto &name : names) {
            auto it = solver.known().find(name);
            trace.witness[name] = it == solver.known().end() ? 0 : it->second;
        }
    }
    return trace;
}

}  // namespace gradechain
