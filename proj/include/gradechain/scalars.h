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

#ifndef GRADECHAIN_SCALARS_H
#define GRADECHAIN_SCALARS_H

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gradechain/rational.h"

namespace gradechain {

/// Absolute tolerance for every floating point cross-check in the project.
inline constexpr double kNumericTolerance = 1e-9;

/// Named irrational generators. When `independent()` holds, {1} together with
/// the symbols is assumed linearly independent over the rationals, which makes
/// e^{2 pi i theta} behave as a transcendental over the cyclotomic numbers.
class SymbolTable {
   public:
    static std::shared_ptr<const SymbolTable> create(std::vector<std::string> symbols, bool independent = true);

    const std::vector<std::string> &symbols() const {
        return symbols_;
    }
    bool independent() const {
        return independent_;
    }
    bool contains(std::string_view name) const;

   private:
    SymbolTable(std::vector<std::string> symbols, bool independent);
    std::vector<std::string> symbols_;
    bool independent_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;
using Assignment = std::map<std::string, double>;

/// The exponent t of a unit complex number e^{2 pi i t}, kept exactly as
/// r + sum_k c_k * symbol_k with r reduced into [0, 1).
///
/// A phase with no symbols may omit its table; it then combines with phases
/// from any table. Two phases that both carry tables must carry the same one.
class Phase {
   public:
    Phase() = default;
    explicit Phase(Rational rational);
    static Phase symbol(const SymbolTablePtr &table, const std::string &name, Rational coefficient = 1);

    const Rational &rational_part() const {
        return rational_;
    }
    const std::map<std::string, Rational> &symbolic_part() const {
        return symbolic_;
    }
    const SymbolTablePtr &table() const {
        return table_;
    }
    bool is_rational() const {
        return symbolic_.empty();
    }
    /// True iff the phase is 0 mod 1 (the unit scalar 1).
    bool is_zero() const {
        return rational_.is_zero() && symbolic_.empty();
    }
    Rational coefficient(const std::string &name) const;

    Phase operator+(const Phase &o) const;
    Phase operator-(const Phase &o) const;
    Phase operator-() const;
    Phase operator*(int64_t k) const;
    Phase &operator+=(const Phase &o) {
        return *this = *this + o;
    }
    Phase &operator-=(const Phase &o) {
        return *this = *this - o;
    }

    /// Exact equality mod 1. Throws MixedSymbolTables for incompatible tables.
    bool operator==(const Phase &o) const;
    /// Total order on canonical forms; tables are ignored.
    bool operator<(const Phase &o) const;

    double evaluate(const Assignment &assignment) const;
    std::string str() const;

   private:
    void canonicalize();
    SymbolTablePtr table_;
    Rational rational_;
    std::map<std::string, Rational> symbolic_;
};

bool phase_equal(const Phase &a, const Phase &b);

/// Parses "1/3", "theta", "2*alpha+1/2", "-theta/2", "1/4 - alpha".
Phase parse_phase(std::string_view text, const SymbolTablePtr &table);

/// Finite rational combination sum_k c_k e^{2 pi i t_k}.
class ExactScalar {
   public:
    ExactScalar() = default;
    ExactScalar(Rational value);  // NOLINT(google-explicit-constructor)
    ExactScalar(int value) : ExactScalar(Rational(value)) {  // NOLINT(google-explicit-constructor)
    }
    static ExactScalar unit(const Phase &phase);
    static ExactScalar term(Rational coefficient, const Phase &phase);

    const std::map<Phase, Rational> &terms() const {
        return terms_;
    }
    bool empty() const {
        return terms_.empty();
    }

    ExactScalar operator+(const ExactScalar &o) const;
    ExactScalar operator-(const ExactScalar &o) const;
    ExactScalar operator-() const;
    ExactScalar operator*(const ExactScalar &o) const;
    ExactScalar &operator+=(const ExactScalar &o);
    ExactScalar &operator*=(const ExactScalar &o) {
        return *this = *this * o;
    }
    /// Multiplies by e^{2 pi i phase}.
    ExactScalar rotated(const Phase &phase) const;
    ExactScalar scaled(const Rational &factor) const;
    ExactScalar conj() const;

    /// Exact decision of whether the value is 0 (see scalar_is_zero).
    bool is_zero() const;
    /// Value equality, decided exactly.
    bool operator==(const ExactScalar &o) const;

    std::complex<double> evaluate(const Assignment &assignment = {}) const;
    /// Exact rendering, e.g. "1 + 2*e(1/3) - e(theta+1/2)".
    std::string str() const;

   private:
    std::map<Phase, Rational> terms_;
};

/// Zero test under the generic-irrational model: terms are grouped by their
/// symbolic part; each group of rational phases is reduced modulo the N-th
/// cyclotomic polynomial, N the lcm of its denominators. Distinct symbolic
/// parts are linearly independent over the cyclotomic field.
bool scalar_is_zero(const ExactScalar &s);

/// Numeric value. Throws MissingAssignment if a symbol has no value.
std::complex<double> scalar_eval(const ExactScalar &s, const Assignment &assignment);

/// Parses sums of terms like "1", "-1/2", "e(1/3)", "2*e(theta)", "i".
ExactScalar parse_scalar(std::string_view text, const SymbolTablePtr &table);

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<int64_t> &cyclotomic_polynomial(int64_t n);

/// Deterministic generic values for symbols: fractional parts of square roots
/// of successive primes. Used when a numeric check needs an assignment.
Assignment generic_assignment(const SymbolTablePtr &table);

}  // namespace gradechain

#endif
