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

#include "gradechain/scalars.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

#include "gradechain/error.h"

namespace gradechain {

SymbolTable::SymbolTable(std::vector<std::string> symbols, bool independent)
    : symbols_(std::move(symbols)), independent_(independent) {
}

std::shared_ptr<const SymbolTable> SymbolTable::create(std::vector<std::string> symbols, bool independent) {
    std::set<std::string> seen;
    for (const auto &s : symbols) {
        if (s.empty() || !(std::isalpha((unsigned char)s[0]) || s[0] == '_')) {
            throw Error(ErrorKind::BadParameter, "bad symbol name '" + s + "'");
        }
        if (s == "e" || s == "i") {
            throw Error(ErrorKind::BadParameter, "symbol name '" + s + "' is reserved");
        }
        if (!seen.insert(s).second) {
            throw Error(ErrorKind::BadParameter, "duplicate symbol '" + s + "'");
        }
    }
    return std::shared_ptr<const SymbolTable>(new SymbolTable(std::move(symbols), independent));
}

bool SymbolTable::contains(std::string_view name) const {
    return std::find(symbols_.begin(), symbols_.end(), name) != symbols_.end();
}

// ---------------------------------------------------------------- Phase

namespace {

SymbolTablePtr merge_tables(const SymbolTablePtr &a, const SymbolTablePtr &b) {
    if (a && b && a != b) {
        throw Error(ErrorKind::MixedSymbolTables, "phases come from different symbol tables");
    }
    return a ? a : b;
}

}  // namespace

Phase::Phase(Rational rational) : rational_(rational.frac()) {
}

Phase Phase::symbol(const SymbolTablePtr &table, const std::string &name, Rational coefficient) {
    if (!table || !table->contains(name)) {
        throw Error(ErrorKind::BadParameter, "unknown symbol '" + name + "'");
    }
    Phase p;
    p.table_ = table;
    p.symbolic_[name] = coefficient;
    p.canonicalize();
    return p;
}

void Phase::canonicalize() {
    rational_ = rational_.frac();
    std::erase_if(symbolic_, [](const auto &kv) { return kv.second.is_zero(); });
}

Rational Phase::coefficient(const std::string &name) const {
    auto it = symbolic_.find(name);
    return it == symbolic_.end() ? Rational(0) : it->second;
}

Phase Phase::operator+(const Phase &o) const {
    Phase r;
    r.table_ = merge_tables(table_, o.table_);
    r.rational_ = rational_ + o.rational_;
    r.symbolic_ = symbolic_;
    for (const auto &[name, c] : o.symbolic_) {
        r.symbolic_[name] += c;
    }
    r.canonicalize();
    return r;
}

Phase Phase::operator-() const {
    Phase r = *this;
    r.rational_ = -rational_;
    for (auto &[name, c] : r.symbolic_) {
        c = -c;
    }
    r.canonicalize();
    return r;
}

Phase Phase::operator-(const Phase &o) const {
    return *this + (-o);
}

Phase Phase::operator*(int64_t k) const {
    Phase r = *this;
    r.rational_ = rational_ * Rational(k);
    for (auto &[name, c] : r.symbolic_) {
        c *= Rational(k);
    }
    r.canonicalize();
    return r;
}

bool Phase::operator==(const Phase &o) const {
    merge_tables(table_, o.table_);
    return rational_ == o.rational_ && symbolic_ == o.symbolic_;
}

bool Phase::operator<(const Phase &o) const {
    if (rational_ != o.rational_) {
        return rational_ < o.rational_;
    }
    return symbolic_ < o.symbolic_;
}

double Phase::evaluate(const Assignment &assignment) const {
    double t = rational_.to_double();
    for (const auto &[name, c] : symbolic_) {
        auto it = assignment.find(name);
        if (it == assignment.end()) {
            throw Error(ErrorKind::MissingAssignment, "no value for symbol '" + name + "'");
        }
        t += c.to_double() * it->second;
    }
    return t;
}

std::string Phase::str() const {
    std::string out;
    auto append = [&](const Rational &c, const std::string &name) {
        Rational mag = c < Rational(0) ? -c : c;
        if (out.empty()) {
            if (c < Rational(0)) {
                out += "-";
            }
        } else {
            out += c < Rational(0) ? "-" : "+";
        }
        if (name.empty()) {
            out += mag.str();
        } else if (mag == Rational(1)) {
            out += name;
        } else if (mag.num() == 1) {
            out += name + "/" + std::to_string(mag.den());
        } else {
            out += mag.str() + "*" + name;
        }
    };
    for (const auto &[name, c] : symbolic_) {
        append(c, name);
    }
    if (!rational_.is_zero() || out.empty()) {
        append(rational_, "");
    }
    return out;
}

bool phase_equal(const Phase &a, const Phase &b) {
    return a == b;
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) {
            ++pos;
        }
    }
    bool done() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw Error(ErrorKind::ParseError, what + " in '" + std::string(text) + "' at offset " + std::to_string(pos));
    }
    bool at_digit() {
        return std::isdigit((unsigned char)peek());
    }
    bool at_ident() {
        char c = peek();
        return std::isalpha((unsigned char)c) || c == '_';
    }
    int64_t integer() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
            ++pos;
        }
        if (start == pos) {
            fail("expected integer");
        }
        return (int64_t)std::stoll(std::string(text.substr(start, pos - start)));
    }
    Rational rational() {
        int64_t num = integer();
        size_t save = pos;
        if (consume('/')) {
            if (!at_digit()) {
                pos = save;
                return Rational(num);
            }
            int64_t den = integer();
            if (den == 0) {
                fail("zero denominator");
            }
            return Rational(num, den);
        }
        return Rational(num);
    }
    std::string ident() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && (std::isalnum((unsigned char)text[pos]) || text[pos] == '_')) {
            ++pos;
        }
        if (start == pos) {
            fail("expected identifier");
        }
        return std::string(text.substr(start, pos - start));
    }
};

Phase parse_phase_terms(Cursor &cur, const SymbolTablePtr &table) {
    Phase total;
    bool first = true;
    while (true) {
        int sign = 1;
        if (cur.consume('-')) {
            sign = -1;
        } else if (!cur.consume('+') && !first) {
            break;
        }
        first = false;
        Phase term;
        if (cur.at_digit()) {
            Rational c = cur.rational();
            if (cur.consume('*')) {
                term = Phase::symbol(table, cur.ident(), c);
            } else if (cur.at_ident()) {
                term = Phase::symbol(table, cur.ident(), c);
            } else {
                term = Phase(c);
            }
        } else if (cur.at_ident()) {
            std::string name = cur.ident();
            Rational c(1);
            if (cur.consume('/')) {
                c = Rational(1, cur.integer());
            }
            term = Phase::symbol(table, name, c);
        } else {
            cur.fail("expected phase term");
        }
        total += sign < 0 ? -term : term;
        char next = cur.peek();
        if (next != '+' && next != '-') {
            break;
        }
    }
    return total;
}

}  // namespace

Phase parse_phase(std::string_view text, const SymbolTablePtr &table) {
    Cursor cur{text};
    if (cur.done()) {
        cur.fail("empty phase");
    }
    Phase p = parse_phase_terms(cur, table);
    if (!cur.done()) {
        cur.fail("trailing characters");
    }
    return p;
}

// ---------------------------------------------------------------- ExactScalar

ExactScalar::ExactScalar(Rational value) {
    if (!value.is_zero()) {
        terms_.emplace(Phase(), value);
    }
}

ExactScalar ExactScalar::unit(const Phase &phase) {
    return term(Rational(1), phase);
}

ExactScalar ExactScalar::term(Rational coefficient, const Phase &phase) {
    ExactScalar s;
    if (!coefficient.is_zero()) {
        s.terms_.emplace(phase, coefficient);
    }
    return s;
}

ExactScalar &ExactScalar::operator+=(const ExactScalar &o) {
    for (const auto &[phase, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(phase, c);
        if (!inserted) {
            // Touching the key also validates table compatibility.
            (void)(it->first == phase);
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }
    return *this;
}

ExactScalar ExactScalar::operator+(const ExactScalar &o) const {
    ExactScalar r = *this;
    r += o;
    return r;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    for (auto &[phase, c] : r.terms_) {
        c = -c;
    }
    return r;
}

ExactScalar ExactScalar::operator-(const ExactScalar &o) const {
    return *this + (-o);
}

ExactScalar ExactScalar::operator*(const ExactScalar &o) const {
    ExactScalar r;
    for (const auto &[p1, c1] : terms_) {
        for (const auto &[p2, c2] : o.terms_) {
            r += term(c1 * c2, p1 + p2);
        }
    }
    return r;
}

ExactScalar ExactScalar::rotated(const Phase &phase) const {
    ExactScalar r;
    for (const auto &[p, c] : terms_) {
        r += term(c, p + phase);
    }
    return r;
}

ExactScalar ExactScalar::scaled(const Rational &factor) const {
    if (factor.is_zero()) {
        return {};
    }
    ExactScalar r = *this;
    for (auto &[p, c] : r.terms_) {
        c *= factor;
    }
    return r;
}

ExactScalar ExactScalar::conj() const {
    ExactScalar r;
    for (const auto &[p, c] : terms_) {
        r += term(c, -p);
    }
    return r;
}

bool ExactScalar::is_zero() const {
    return scalar_is_zero(*this);
}

bool ExactScalar::operator==(const ExactScalar &o) const {
    return (*this - o).is_zero();
}

std::complex<double> ExactScalar::evaluate(const Assignment &assignment) const {
    return scalar_eval(*this, assignment);
}

std::string ExactScalar::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[p, c] : terms_) {
        bool negative = c < Rational(0);
        Rational mag = negative ? -c : c;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        if (p.is_zero()) {
            out += mag.str();
        } else {
            if (mag != Rational(1)) {
                out += mag.str() + "*";
            }
            out += "e(" + p.str() + ")";
        }
    }
    return out;
}

// ---------------------------------------------------------------- zero test

const std::vector<int64_t> &cyclotomic_polynomial(int64_t n) {
    static std::mutex mu;
    static std::map<int64_t, std::vector<int64_t>> cache;
    if (n < 1) {
        throw Error(ErrorKind::BadParameter, "cyclotomic index must be positive");
    }
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) {
            return it->second;
        }
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n. Exact integer division
    // because every divisor is monic.
    std::vector<int64_t> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (int64_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        const std::vector<int64_t> &div = cyclotomic_polynomial(d);
        int64_t deg = (int64_t)div.size() - 1;
        int64_t top = (int64_t)poly.size() - 1;
        std::vector<int64_t> quotient(top - deg + 1, 0);
        for (int64_t i = top; i >= deg; --i) {
            int64_t q = poly[i];
            quotient[i - deg] = q;
            if (q != 0) {
                for (int64_t j = 0; j <= deg; ++j) {
                    poly[i - deg + j] -= q * div[j];
                }
            }
        }
        poly = std::move(quotient);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(poly)).first->second;
}

bool scalar_is_zero(const ExactScalar &s) {
    std::map<std::map<std::string, Rational>, std::vector<std::pair<Rational, Rational>>> groups;
    for (const auto &[phase, c] : s.terms()) {
        if (!phase.is_rational() && phase.table() && !phase.table()->independent()) {
            throw Error(ErrorKind::BadParameter, "zero test needs a rationally independent symbol table");
        }
        groups[phase.symbolic_part()].emplace_back(phase.rational_part(), c);
    }
    for (const auto &[symbolic, entries] : groups) {
        int64_t n = 1;
        for (const auto &[r, c] : entries) {
            n = lcm64(n, r.den());
        }
        std::vector<Rational> coeffs(n, Rational(0));
        for (const auto &[r, c] : entries) {
            coeffs[(r.num() * (n / r.den())) % n] += c;
        }
        const std::vector<int64_t> &phi = cyclotomic_polynomial(n);
        size_t deg = phi.size() - 1;
        for (size_t i = coeffs.size(); i-- > deg;) {
            Rational t = coeffs[i];
            if (t.is_zero()) {
                continue;
            }
            for (size_t j = 0; j <= deg; ++j) {
                if (phi[j] != 0) {
                    coeffs[i - deg + j] -= t * Rational(phi[j]);
                }
            }
        }
        for (const auto &c : coeffs) {
            if (!c.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::complex<double> scalar_eval(const ExactScalar &s, const Assignment &assignment) {
    std::complex<double> total = 0;
    for (const auto &[phase, c] : s.terms()) {
        double t = phase.evaluate(assignment);
        total += c.to_double() * std::polar(1.0, 2 * std::numbers::pi * t);
    }
    return total;
}

ExactScalar parse_scalar(std::string_view text, const SymbolTablePtr &table) {
    Cursor cur{text};
    if (cur.done()) {
        cur.fail("empty scalar");
    }
    ExactScalar total;
    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        if (cur.consume('-')) {
            sign = -1;
        } else if (!cur.consume('+') && !first) {
            cur.fail("expected '+' or '-'");
        }
        first = false;
        Rational coeff(1);
        bool have_coeff = false;
        if (cur.at_digit()) {
            coeff = cur.rational();
            have_coeff = true;
            cur.consume('*');
        }
        Phase phase;
        bool have_phase = false;
        if (cur.at_ident()) {
            size_t save = cur.pos;
            std::string name = cur.ident();
            if (name == "i") {
                phase = Phase(Rational(1, 4));
            } else if (name == "e" && cur.consume('(')) {
                phase = parse_phase_terms(cur, table);
                if (!cur.consume(')')) {
                    cur.fail("expected ')'");
                }
            } else {
                cur.pos = save;
                cur.fail("expected 'e(...)' or 'i'");
            }
            have_phase = true;
        }
        if (!have_coeff && !have_phase) {
            cur.fail("expected scalar term");
        }
        total += ExactScalar::term(sign < 0 ? -coeff : coeff, phase);
    }
    return total;
}

Assignment generic_assignment(const SymbolTablePtr &table) {
    Assignment out;
    if (!table) {
        return out;
    }
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    size_t k = 0;
    for (const auto &name : table->symbols()) {
        double root = std::sqrt((double)primes[k % std::size(primes)]) + (double)(k / std::size(primes));
        out[name] = root - std::floor(root);
        ++k;
    }
    return out;
}

}  // namespace gradechain
