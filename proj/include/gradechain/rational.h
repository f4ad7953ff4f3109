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

#ifndef GRADECHAIN_RATIONAL_H
#define GRADECHAIN_RATIONAL_H

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace gradechain {

/// Reduced fraction with a positive denominator. Intermediate products use
/// 128-bit integers; a result that does not fit in 64 bits throws
/// std::overflow_error instead of wrapping.
class Rational {
   public:
    constexpr Rational() = default;
    Rational(int64_t num);  // NOLINT(google-explicit-constructor)
    Rational(int64_t num, int64_t den);

    int64_t num() const {
        return num_;
    }
    int64_t den() const {
        return den_;
    }
    bool is_zero() const {
        return num_ == 0;
    }
    bool is_integer() const {
        return den_ == 1;
    }

    /// Largest integer <= *this.
    int64_t floor() const;
    /// *this - floor(*this), always in [0, 1).
    Rational frac() const;
    double to_double() const;
    std::string str() const;

    Rational operator-() const;
    Rational operator+(const Rational &o) const;
    Rational operator-(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    Rational operator/(const Rational &o) const;
    Rational &operator+=(const Rational &o) {
        return *this = *this + o;
    }
    Rational &operator-=(const Rational &o) {
        return *this = *this - o;
    }
    Rational &operator*=(const Rational &o) {
        return *this = *this * o;
    }

    bool operator==(const Rational &o) const = default;
    std::strong_ordering operator<=>(const Rational &o) const;

   private:
    static Rational from_wide(__int128 num, __int128 den);
    int64_t num_ = 0;
    int64_t den_ = 1;
};

/// Parses "7", "-3", "2/6" (reduced on the way in). Throws Error(ParseError).
Rational parse_rational(std::string_view text);

int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);

}  // namespace gradechain

#endif
