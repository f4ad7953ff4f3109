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

#include "gradechain/rational.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gradechain/error.h"

namespace gradechain {

namespace {

__int128 abs128(__int128 x) {
    return x < 0 ? -x : x;
}

__int128 gcd128(__int128 a, __int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 x) {
    return x >= INT64_MIN && x <= INT64_MAX;
}

}  // namespace

int64_t gcd64(int64_t a, int64_t b) {
    return std::gcd(a, b);
}

int64_t lcm64(int64_t a, int64_t b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    __int128 r = (__int128)(a / gcd64(a, b)) * b;
    r = abs128(r);
    if (!fits64(r)) {
        throw std::overflow_error("lcm overflow");
    }
    return (int64_t)r;
}

Rational::Rational(int64_t num) : num_(num), den_(1) {
}

Rational::Rational(int64_t num, int64_t den) {
    *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (!fits64(num) || !fits64(den)) {
        throw std::overflow_error("rational overflow");
    }
    Rational r;
    r.num_ = (int64_t)num;
    r.den_ = (int64_t)den;
    return r;
}

int64_t Rational::floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) {
        q -= 1;
    }
    return q;
}

Rational Rational::frac() const {
    return from_wide((__int128)num_ - (__int128)floor() * den_, den_);
}

double Rational::to_double() const {
    return (double)num_ / (double)den_;
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    return from_wide(-(__int128)num_, den_);
}

Rational Rational::operator+(const Rational &o) const {
    if (den_ == o.den_) {
        return from_wide((__int128)num_ + o.num_, den_);
    }
    return from_wide((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_);
}

Rational Rational::operator-(const Rational &o) const {
    return *this + (-o);
}

Rational Rational::operator*(const Rational &o) const {
    return from_wide((__int128)num_ * o.num_, (__int128)den_ * o.den_);
}

Rational Rational::operator/(const Rational &o) const {
    if (o.num_ == 0) {
        throw std::domain_error("division by zero rational");
    }
    return from_wide((__int128)num_ * o.den_, (__int128)den_ * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational &o) const {
    __int128 lhs = (__int128)num_ * o.den_;
    __int128 rhs = (__int128)o.num_ * den_;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) -> int64_t {
        while (!s.empty() && std::isspace((unsigned char)s.front())) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace((unsigned char)s.back())) {
            s.remove_suffix(1);
        }
        if (!s.empty() && s.front() == '+') {
            s.remove_prefix(1);
        }
        int64_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
        }
        return value;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) {
        throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_int(text.substr(0, slash)), den);
}

}  // namespace gradechain
