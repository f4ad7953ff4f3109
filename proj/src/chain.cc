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

#include "gradechain/chain.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "gradechain/error.h"

namespace gradechain {

namespace {

constexpr int kMaxSiteExp = 62;

int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("site index out of range");
    }
    return (int64_t)v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace((unsigned char)s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------- SiteIndex

SiteIndex SiteIndex::dyadic(int64_t num, int exp) {
    __int128 n = num;
    while (exp < 0) {
        n *= 2;
        ++exp;
    }
    while (exp > 0 && n % 2 == 0) {
        n /= 2;
        --exp;
    }
    if (exp > kMaxSiteExp) {
        throw Error(ErrorKind::BadParameter, "site denominator exceeds 2^62");
    }
    SiteIndex s;
    s.num_ = narrow(n);
    s.exp_ = exp;
    return s;
}

SiteIndex SiteIndex::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view t) {
        t = trim(t);
        try {
            size_t used = 0;
            long long v = std::stoll(std::string(t), &used);
            if (used != t.size()) {
                throw std::invalid_argument("trailing");
            }
            return (int64_t)v;
        } catch (const std::exception &) {
            throw Error(ErrorKind::ParseError, "bad site index '" + std::string(text) + "'");
        }
    };
    if (slash == std::string_view::npos) {
        return SiteIndex(parse_int(text));
    }
    int64_t num = parse_int(text.substr(0, slash));
    std::string_view den = trim(text.substr(slash + 1));
    if (den.substr(0, 2) == "2^") {
        int64_t e = parse_int(den.substr(2));
        if (e < 0 || e > kMaxSiteExp) {
            throw Error(ErrorKind::ParseError, "bad dyadic exponent in '" + std::string(text) + "'");
        }
        return dyadic(num, (int)e);
    }
    int64_t d = parse_int(den);
    if (d <= 0 || (d & (d - 1)) != 0) {
        throw Error(ErrorKind::ParseError, "site denominator must be a power of two: '" + std::string(text) + "'");
    }
    int e = 0;
    while ((int64_t(1) << e) < d) {
        ++e;
    }
    return dyadic(num, e);
}

int64_t SiteIndex::floor() const {
    return num_ >> exp_;
}

SiteIndex SiteIndex::operator+(const SiteIndex &o) const {
    int e = std::max(exp_, o.exp_);
    __int128 a = (__int128)num_ << (e - exp_);
    __int128 b = (__int128)o.num_ << (e - o.exp_);
    __int128 s = a + b;
    while (e > 0 && s % 2 == 0) {
        s /= 2;
        --e;
    }
    return dyadic(narrow(s), e);
}

SiteIndex SiteIndex::operator-(const SiteIndex &o) const {
    return *this + SiteIndex::dyadic(-o.num_, o.exp_);
}

SiteIndex SiteIndex::times_pow2(int k) const {
    if (k >= 0) {
        int drop = std::min(k, exp_);
        __int128 n = (__int128)num_ << (k - drop);
        return dyadic(narrow(n), exp_ - drop);
    }
    return dyadic(num_, exp_ - k);
}

std::strong_ordering SiteIndex::operator<=>(const SiteIndex &o) const {
    int e = std::max(exp_, o.exp_);
    __int128 a = (__int128)num_ << (e - exp_);
    __int128 b = (__int128)o.num_ << (e - o.exp_);
    return a <=> b;
}

std::string SiteIndex::str() const {
    if (exp_ == 0) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(int64_t(1) << exp_);
}

// ---------------------------------------------------------------- SiteMap

SiteMap::SiteMap(std::string name, std::function<SiteIndex(const SiteIndex &)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
}

SiteMap SiteMap::identity() {
    return SiteMap("id", [](const SiteIndex &s) { return s; });
}

SiteMap SiteMap::shift(int64_t k) {
    return SiteMap("tau^" + std::to_string(k), [k](const SiteIndex &s) { return s + SiteIndex(k); });
}

SiteMap SiteMap::partial_shift(int64_t h) {
    return SiteMap("theta_" + std::to_string(h),
                   [h](const SiteIndex &s) { return s < SiteIndex(h) ? s : s + SiteIndex(1); });
}

SiteMap SiteMap::thick_partial_shift(int n) {
    return SiteMap("thick_theta_" + std::to_string(n), [n](const SiteIndex &s) {
        SiteIndex d = s.times_pow2(n);
        SiteIndex image;
        if (d <= SiteIndex(-1)) {
            image = d;
        } else if (d <= SiteIndex(0)) {
            image = d.times_pow2(1) + SiteIndex(1);
        } else {
            image = d + SiteIndex(1);
        }
        return image.times_pow2(-n);
    });
}

SiteMap SiteMap::dyadic_translation(int64_t k, int n) {
    SiteIndex step = SiteIndex::dyadic(k, n);
    return SiteMap("dyadic_tau_" + std::to_string(k) + "_" + std::to_string(n),
                   [step](const SiteIndex &s) { return s + step; });
}

SiteMap SiteMap::dilation(int n) {
    return SiteMap("delta_" + std::to_string(n), [n](const SiteIndex &s) { return s.times_pow2(n); });
}

SiteMap SiteMap::table(std::map<SiteIndex, SiteIndex> entries) {
    return SiteMap("table", [entries = std::move(entries)](const SiteIndex &s) {
        auto it = entries.find(s);
        if (it == entries.end()) {
            throw Error(ErrorKind::BadParameter, "site " + s.str() + " is not in the map table");
        }
        return it->second;
    });
}

SiteMap SiteMap::compose(const SiteMap &outer, const SiteMap &inner) {
    return SiteMap(outer.name() + " o " + inner.name(),
                   [outer, inner](const SiteIndex &s) { return outer(inner(s)); });
}

// ---------------------------------------------------------------- ChainContext

ChainContext::ChainContext(SampleAlgebraPtr sample, Bicharacter v)
    : sample_(std::move(sample)), v_(std::move(v)), class_(bichar_classify(v_)) {
    if (!(v_.group() == sample_->degree_group())) {
        throw Error(ErrorKind::BadParameter, "bicharacter group " + v_.group().str() +
                                                 " differs from the sample degree group " +
                                                 sample_->degree_group().str());
    }
}

SymbolTablePtr ChainContext::symbols() const {
    if (auto t = sample_->symbols()) {
        return t;
    }
    for (const auto &row : v_.matrix()) {
        for (const auto &p : row) {
            if (p.table()) {
                return p.table();
            }
        }
    }
    return nullptr;
}

Element ChainContext::monomial_degree(const ChainMonomial &m) const {
    const DegreeGroup &g = sample_->degree_group();
    Element d = g.zero();
    for (const auto &f : m) {
        d = g.add(d, sample_->degree(f.exponent));
    }
    return d;
}

std::string ChainContext::monomial_str(const ChainMonomial &m) const {
    if (m.empty()) {
        return "1";
    }
    std::string out;
    for (const auto &f : m) {
        if (!out.empty()) {
            out += " ";
        }
        out += "i[" + f.site.str() + "](" + sample_->basis_str(f.exponent) + ")";
    }
    return out;
}

ChainContextPtr make_chain(SampleAlgebraPtr sample, Bicharacter v) {
    return std::make_shared<const ChainContext>(std::move(sample), std::move(v));
}

// ---------------------------------------------------------------- ChainElement

ChainElement::ChainElement(ChainContextPtr context) : context_(std::move(context)) {
}

ChainElement ChainElement::unit(ChainContextPtr context) {
    ChainElement x(std::move(context));
    x.add_term({}, ExactScalar(1));
    return x;
}

ChainElement ChainElement::monomial(ChainContextPtr context, ChainMonomial m, ExactScalar coefficient) {
    const DegreeGroup &idx = context->sample()->index_group();
    for (size_t k = 0; k < m.size(); ++k) {
        m[k].exponent = idx.reduce(m[k].exponent);
        if (idx.is_zero(m[k].exponent)) {
            throw Error(ErrorKind::BadParameter, "monomial factor with trivial exponent");
        }
        if (k > 0 && !(m[k - 1].site < m[k].site)) {
            throw Error(ErrorKind::BadParameter, "monomial sites are not strictly increasing");
        }
    }
    ChainElement x(std::move(context));
    x.add_term(m, coefficient);
    return x;
}

ChainElement ChainElement::embed(ChainContextPtr context, const SiteIndex &site, const SampleElement &x) {
    if (x.algebra() != context->sample()) {
        throw Error(ErrorKind::ContextMismatch, "sample element does not belong to the chain sample");
    }
    const DegreeGroup &idx = context->sample()->index_group();
    ChainElement out(std::move(context));
    for (const auto &[m, c] : x.support()) {
        if (idx.is_zero(m)) {
            out.add_term({}, c);
        } else {
            out.add_term({ChainFactor{site, m}}, c);
        }
    }
    return out;
}

ChainElement ChainElement::basis(ChainContextPtr context, const SiteIndex &site, const Element &m) {
    auto sample = context->sample();
    return embed(std::move(context), site, SampleElement::basis(sample, m));
}

void ChainElement::add_term(const ChainMonomial &m, const ExactScalar &c) {
    auto [it, inserted] = support_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
    }
    if (it->second.is_zero()) {
        support_.erase(it);
    }
}

std::vector<SiteIndex> ChainElement::sites() const {
    std::set<SiteIndex> s;
    for (const auto &[m, c] : support_) {
        for (const auto &f : m) {
            s.insert(f.site);
        }
    }
    return {s.begin(), s.end()};
}

static void check_same(const ChainElement &x, const ChainElement &y) {
    if (x.context() != y.context()) {
        throw Error(ErrorKind::ContextMismatch, "chain elements belong to different chain contexts");
    }
}

ChainElement ChainElement::operator+(const ChainElement &o) const {
    check_same(*this, o);
    ChainElement r = *this;
    for (const auto &[m, c] : o.support_) {
        r.add_term(m, c);
    }
    return r;
}

ChainElement ChainElement::operator-(const ChainElement &o) const {
    return *this + o.scaled(ExactScalar(-1));
}

ChainElement ChainElement::operator*(const ChainElement &o) const {
    return chain_mul(*this, o);
}

ChainElement ChainElement::scaled(const ExactScalar &s) const {
    ChainElement r(context_);
    for (const auto &[m, c] : support_) {
        r.add_term(m, c * s);
    }
    return r;
}

bool ChainElement::operator==(const ChainElement &o) const {
    return context_ == o.context_ && (*this - o).is_zero();
}

std::string ChainElement::str() const {
    if (support_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : support_) {
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + c.str() + ") " + context_->monomial_str(m);
    }
    return out;
}

// ---------------------------------------------------------------- operations

namespace {

/// Moves the factors of y into x one at a time, collecting swap and
/// collision phases.
ChainMonomial merge_monomials(const ChainContext &ctx, const ChainMonomial &x, const ChainMonomial &y, Phase &phase) {
    const SampleAlgebra &sample = *ctx.sample();
    const Bicharacter &v = ctx.bicharacter();
    const DegreeGroup &idx = sample.index_group();
    ChainMonomial out = x;
    for (const ChainFactor &yf : y) {
        Element ydeg = sample.degree(yf.exponent);
        size_t pos = out.size();
        while (pos > 0 && yf.site < out[pos - 1].site) {
            --pos;
            phase -= v(ydeg, sample.degree(out[pos].exponent));
        }
        if (pos > 0 && out[pos - 1].site == yf.site) {
            ChainFactor &xf = out[pos - 1];
            phase += sample.cocycle(xf.exponent, yf.exponent);
            xf.exponent = idx.add(xf.exponent, yf.exponent);
            if (idx.is_zero(xf.exponent)) {
                out.erase(out.begin() + (pos - 1));
            }
        } else {
            out.insert(out.begin() + pos, yf);
        }
    }
    return out;
}

}  // namespace

ChainElement chain_mul(const ChainElement &x, const ChainElement &y) {
    check_same(x, y);
    const ChainContext &ctx = *x.context();
    ChainElement r(x.context());
    for (const auto &[m, c1] : x.support()) {
        for (const auto &[n, c2] : y.support()) {
            Phase phase;
            ChainMonomial prod = merge_monomials(ctx, m, n, phase);
            r.add_term(prod, (c1 * c2).rotated(phase));
        }
    }
    return r;
}

ChainElement chain_star(const ChainElement &x) {
    const auto &ctx = x.context();
    const auto &sample = ctx->sample();
    ChainElement r(ctx);
    for (const auto &[m, c] : x.support()) {
        ChainElement term = ChainElement::unit(ctx).scaled(c.conj());
        for (auto it = m.rbegin(); it != m.rend(); ++it) {
            term = term * ChainElement::embed(ctx, it->site, SampleElement::basis(sample, it->exponent).star());
        }
        r = r + term;
    }
    return r;
}

ChainElement apply_monotone(const ChainElement &x, const SiteMap &f) {
    std::vector<SiteIndex> sites = x.sites();
    std::map<SiteIndex, SiteIndex> image;
    for (size_t k = 0; k < sites.size(); ++k) {
        image[sites[k]] = f(sites[k]);
        if (k > 0 && !(image[sites[k - 1]] < image[sites[k]])) {
            throw Error(ErrorKind::NotMonotone, "map " + f.name() + " is not strictly increasing on sites " +
                                                    sites[k - 1].str() + ", " + sites[k].str());
        }
    }
    ChainElement r(x.context());
    for (const auto &[m, c] : x.support()) {
        ChainMonomial moved = m;
        for (auto &factor : moved) {
            factor.site = image.at(factor.site);
        }
        r.add_term(moved, c);
    }
    return r;
}

ChainElement apply_permutation(const ChainElement &x, const SitePermutation &sigma) {
    std::set<SiteIndex> domain;
    std::set<SiteIndex> range;
    bool moves = false;
    for (const auto &[from, to] : sigma) {
        domain.insert(from);
        range.insert(to);
        moves = moves || !(from == to);
    }
    if (domain != range) {
        throw Error(ErrorKind::BadParameter, "site permutation is not a bijection of its support");
    }
    if (!moves) {
        return x;
    }
    const auto &ctx = x.context();
    if (!ctx->bicharacter_class().antisymmetric) {
        throw Error(ErrorKind::NotPermutable, "permutations only act when the bicharacter is antisymmetric");
    }
    ChainElement r(ctx);
    for (const auto &[m, c] : x.support()) {
        ChainElement term = ChainElement::unit(ctx).scaled(c);
        for (const auto &factor : m) {
            auto it = sigma.find(factor.site);
            SiteIndex target = it == sigma.end() ? factor.site : it->second;
            term = term * ChainElement::basis(ctx, target, factor.exponent);
        }
        r = r + term;
    }
    return r;
}

ChainElement chain_expectation(const ChainElement &x, const Subgroup &s) {
    const auto &ctx = x.context();
    const auto &sample = *ctx->sample();
    if (!(s.parent() == sample.degree_group())) {
        throw Error(ErrorKind::WrongGroup, "subgroup does not live in the chain degree group");
    }
    ChainElement r(ctx);
    for (const auto &[m, c] : x.support()) {
        bool keep = std::all_of(m.begin(), m.end(),
                                [&](const ChainFactor &f) { return s.contains(sample.degree(f.exponent)); });
        if (keep) {
            r.add_term(m, c);
        }
    }
    return r;
}

// ---------------------------------------------------------------- oracle

RegularRepOracle::RegularRepOracle(ChainContextPtr context, std::vector<SiteIndex> window)
    : context_(std::move(context)), window_(std::move(window)) {
    std::sort(window_.begin(), window_.end());
    window_.erase(std::unique(window_.begin(), window_.end()), window_.end());
}

RegularRepOracle::Dense RegularRepOracle::densify(const ChainMonomial &m) const {
    const DegreeGroup &idx = context_->sample()->index_group();
    Dense d(window_.size(), idx.zero());
    for (const auto &f : m) {
        auto it = std::lower_bound(window_.begin(), window_.end(), f.site);
        if (it == window_.end() || !(*it == f.site)) {
            throw Error(ErrorKind::BadParameter, "site " + f.site.str() + " is outside the oracle window");
        }
        size_t p = it - window_.begin();
        d[p] = idx.add(d[p], f.exponent);
    }
    return d;
}

ChainMonomial RegularRepOracle::sparsify(const Dense &d) const {
    const DegreeGroup &idx = context_->sample()->index_group();
    ChainMonomial m;
    for (size_t p = 0; p < d.size(); ++p) {
        if (!idx.is_zero(d[p])) {
            m.push_back({window_[p], d[p]});
        }
    }
    return m;
}

Phase RegularRepOracle::cocycle(const ChainMonomial &x, const ChainMonomial &y) const {
    const SampleAlgebra &sample = *context_->sample();
    const Bicharacter &v = context_->bicharacter();
    Dense dx = densify(x);
    Dense dy = densify(y);
    Phase total;
    for (size_t p = 0; p < dx.size(); ++p) {
        total += sample.cocycle(dx[p], dy[p]);
        Element ydeg = sample.degree(dy[p]);
        for (size_t q = p + 1; q < dx.size(); ++q) {
            total -= v(ydeg, sample.degree(dx[q]));
        }
    }
    return total;
}

ChainMonomial RegularRepOracle::product_index(const ChainMonomial &x, const ChainMonomial &y) const {
    const DegreeGroup &idx = context_->sample()->index_group();
    Dense dx = densify(x);
    Dense dy = densify(y);
    for (size_t p = 0; p < dx.size(); ++p) {
        dx[p] = idx.add(dx[p], dy[p]);
    }
    return sparsify(dx);
}

ChainElement RegularRepOracle::act(const ChainMonomial &x, const ChainElement &f) const {
    ChainElement r(context_);
    for (const auto &[y, c] : f.support()) {
        r.add_term(product_index(x, y), c.rotated(cocycle(x, y)));
    }
    return r;
}

std::vector<RegularRepEntry> regular_rep_table(const RegularRepOracle &oracle, const std::vector<ChainMonomial> &basis) {
    std::vector<RegularRepEntry> table;
    table.reserve(basis.size() * basis.size());
    for (const auto &x : basis) {
        for (const auto &y : basis) {
            table.push_back({x, y, oracle.product_index(x, y), oracle.cocycle(x, y)});
        }
    }
    return table;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) {
            ++pos;
        }
    }
    bool at_end() {
        skip_space();
        return pos >= text.size();
    }
    bool peek(char c) {
        skip_space();
        return pos < text.size() && text[pos] == c;
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorKind::ParseError,
                    what + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
    }
    void expect(char c) {
        if (!peek(c)) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos;
    }
    std::string_view until(char c) {
        size_t end = text.find(c, pos);
        if (end == std::string_view::npos) {
            fail(std::string("missing '") + c + "'");
        }
        std::string_view out = text.substr(pos, end - pos);
        pos = end;
        return out;
    }
    std::string identifier() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) {
            ++pos;
        }
        if (start == pos) {
            fail("expected a generator name");
        }
        return std::string(text.substr(start, pos - start));
    }
    int64_t integer() {
        skip_space();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            ++pos;
        }
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
            ++pos;
        }
        std::string digits(text.substr(start, pos - start));
        if (digits.empty() || digits == "-" || digits == "+") {
            fail("expected an integer exponent");
        }
        return std::stoll(digits);
    }
};

Element parse_exponent(const SampleAlgebra &sample, Cursor &cur) {
    Element m = sample.index_group().zero();
    cur.expect('(');
    while (!cur.peek(')')) {
        if (cur.at_end()) {
            cur.fail("unterminated letter");
        }
        if (cur.peek('1')) {
            ++cur.pos;
            continue;
        }
        std::string name = cur.identifier();
        auto g = sample.generator_index(name);
        if (!g) {
            cur.fail("unknown generator '" + name + "'");
        }
        int64_t power = 1;
        if (cur.peek('^')) {
            ++cur.pos;
            power = cur.integer();
        }
        m[*g] += power;
    }
    cur.expect(')');
    return sample.index_group().reduce(m);
}

}  // namespace

std::vector<ChainFactor> parse_factors(const SampleAlgebra &sample, std::string_view text) {
    Cursor cur{text};
    std::vector<ChainFactor> letters;
    while (!cur.at_end()) {
        if (!cur.peek('i')) {
            cur.fail("expected a letter i[site](...)");
        }
        ++cur.pos;
        cur.expect('[');
        SiteIndex site = SiteIndex::parse(cur.until(']'));
        cur.expect(']');
        letters.push_back({site, parse_exponent(sample, cur)});
    }
    return letters;
}

ChainElement parse_chain_element(const ChainContextPtr &context, std::string_view text) {
    std::vector<std::pair<int, std::string_view>> terms;
    int depth = 0;
    size_t start = 0;
    int sign = 1;
    for (size_t k = 0; k <= text.size(); ++k) {
        char c = k < text.size() ? text[k] : '+';
        if (c == '(' || c == '[') {
            ++depth;
        } else if (c == ')' || c == ']') {
            --depth;
        } else if (depth == 0 && (c == '+' || c == '-')) {
            std::string_view piece = trim(text.substr(start, k - start));
            int flip = c == '-' ? -1 : 1;
            if (!piece.empty()) {
                terms.emplace_back(sign, piece);
                sign = flip;
            } else {
                sign *= flip;
            }
            start = k + 1;
        }
    }
    if (depth != 0) {
        throw Error(ErrorKind::ParseError, "unbalanced brackets in '" + std::string(text) + "'");
    }
    SymbolTablePtr table = context->symbols();
    ChainElement total(context);
    for (auto [s, piece] : terms) {
        ExactScalar coeff(s);
        std::string_view rest = piece;
        if (!rest.empty() && rest.front() == '(') {
            int d = 0;
            size_t close = 0;
            for (size_t k = 0; k < rest.size(); ++k) {
                d += rest[k] == '(' ? 1 : rest[k] == ')' ? -1 : 0;
                if (d == 0) {
                    close = k;
                    break;
                }
            }
            coeff = coeff * parse_scalar(rest.substr(1, close - 1), table);
            rest = trim(rest.substr(close + 1));
        } else {
            size_t letter = rest.find("i[");
            std::string_view head = trim(rest.substr(0, letter == std::string_view::npos ? rest.size() : letter));
            if (!head.empty()) {
                if (head.back() == '*') {
                    head = trim(head.substr(0, head.size() - 1));
                }
                coeff = coeff * parse_scalar(head, table);
                rest = letter == std::string_view::npos ? std::string_view() : rest.substr(letter);
            }
        }
        if (!rest.empty() && rest.front() == '*') {
            rest = trim(rest.substr(1));
        }
        ChainElement term = ChainElement::unit(context).scaled(coeff);
        for (const auto &f : parse_factors(*context->sample(), rest)) {
            term = term * ChainElement::basis(context, f.site, f.exponent);
        }
        total = total + term;
    }
    return total;
}

}  // namespace gradechain
