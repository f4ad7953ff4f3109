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

#ifndef GRADECHAIN_SAMPLE_H
#define GRADECHAIN_SAMPLE_H

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gradechain/degrees.h"
#include "gradechain/scalars.h"

namespace gradechain {

/// Twisted group algebra of an exponent lattice M ("monomial sample"):
/// basis b_m, m in M, with b_m b_n = e^{2 pi i c(m,n)} b_{m+n} for a bilinear
/// cocycle c, graded by a homomorphism from M into the degree group.
/// Every basis monomial is unitary: b_m^* = e^{2 pi i c(m,m)} b_{-m}.
class SampleAlgebra {
   public:
    SampleAlgebra(std::string kind,
                  std::vector<std::string> generator_names,
                  DegreeGroup index_group,
                  std::vector<std::vector<Phase>> cocycle,
                  DegreeGroup degree_group,
                  std::vector<Element> degree_images);

    const std::string &kind() const {
        return kind_;
    }
    const std::vector<std::string> &generator_names() const {
        return names_;
    }
    const DegreeGroup &index_group() const {
        return index_;
    }
    const DegreeGroup &degree_group() const {
        return degrees_;
    }
    const std::vector<std::vector<Phase>> &cocycle_matrix() const {
        return cocycle_;
    }
    /// Symbol table used by the cocycle, if any.
    SymbolTablePtr symbols() const;

    Phase cocycle(const Element &m, const Element &n) const;
    Element degree(const Element &m) const;
    Phase star_phase(const Element &m) const;
    std::optional<size_t> generator_index(const std::string &name) const;

    /// Readable form of a basis index, e.g. "u^1 w^-2".
    std::string basis_str(const Element &m) const;

   private:
    std::string kind_;
    std::vector<std::string> names_;
    DegreeGroup index_;
    std::vector<std::vector<Phase>> cocycle_;
    DegreeGroup degrees_;
    std::vector<Element> degree_images_;
};

using SampleAlgebraPtr = std::shared_ptr<const SampleAlgebra>;

/// Finite linear combination of basis monomials.
class SampleElement {
   public:
    explicit SampleElement(SampleAlgebraPtr algebra);
    static SampleElement basis(SampleAlgebraPtr algebra, const Element &m, ExactScalar coefficient = 1);
    static SampleElement unit(SampleAlgebraPtr algebra);

    const SampleAlgebraPtr &algebra() const {
        return algebra_;
    }
    const std::map<Element, ExactScalar> &support() const {
        return support_;
    }
    bool is_zero() const {
        return support_.empty();
    }
    /// Degree shared by every support key, if there is one.
    std::optional<Element> homogeneous_degree() const;

    SampleElement operator+(const SampleElement &o) const;
    SampleElement operator-(const SampleElement &o) const;
    SampleElement operator*(const SampleElement &o) const;
    SampleElement scaled(const ExactScalar &s) const;
    SampleElement star() const;
    bool operator==(const SampleElement &o) const;
    std::string str() const;

    void add_term(const Element &m, const ExactScalar &c);

   private:
    SampleAlgebraPtr algebra_;
    std::map<Element, ExactScalar> support_;
};

SampleElement sample_mul(const SampleElement &x, const SampleElement &y);

/// Keeps the support keys whose degree lies in `s`. This is the conditional
/// expectation given by averaging the grading over the annihilator of s.
SampleElement spectral_projection(const SampleElement &x, const Subgroup &s);

/// Linear functional given by a finite table of values on basis monomials;
/// unlisted monomials evaluate to 0. Construction checks omega(1) = 1 and
/// hermiticity on the table.
class SampleState {
   public:
    SampleState(SampleAlgebraPtr algebra, std::map<Element, ExactScalar> values);
    /// The canonical trace: 1 on b_0, 0 elsewhere.
    static SampleState trace(SampleAlgebraPtr algebra);

    const SampleAlgebraPtr &algebra() const {
        return algebra_;
    }
    const std::map<Element, ExactScalar> &values() const {
        return values_;
    }
    ExactScalar operator()(const Element &m) const;
    ExactScalar evaluate(const SampleElement &x) const;

   private:
    SampleAlgebraPtr algebra_;
    std::map<Element, ExactScalar> values_;
};

/// Degrees carrying a nonzero value of the state.
std::set<Element> spectral_support(const SampleState &omega);

struct PositivityVerdict {
    bool positive;
    double min_eigenvalue;
    /// Eigenvector of the minimal eigenvalue, indexed like the window.
    std::vector<std::complex<double>> witness;
};

/// Gram matrix test G[m][n] = omega(b_m^* b_n) on a finite window of basis
/// indices; not positive iff its smallest eigenvalue is below -1e-9.
/// Symbols are evaluated at `assignment`, or generic values if it is empty.
PositivityVerdict state_positivity(const SampleState &omega,
                                   const std::vector<Element> &window,
                                   const Assignment &assignment = {});

enum class SampleKind { FunctionAlgebra, ClockShift, NcTorus, Parafermion };

struct SampleSpec {
    SampleKind kind = SampleKind::FunctionAlgebra;
    /// Degree group for FunctionAlgebra.
    DegreeGroup group;
    /// d for ClockShift and Parafermion.
    int64_t d = 2;
    /// Deformation parameter for NcTorus.
    Phase alpha;
    /// Optional generator names overriding the defaults.
    std::vector<std::string> names;
};

SampleAlgebraPtr build_standard_sample(const SampleSpec &spec);

/// C(G) seen as the group algebra of the dual group, graded by basis index.
SampleAlgebraPtr function_algebra(const DegreeGroup &dual, std::vector<std::string> names = {});
/// M_d generated by c1, c2 with c_j^d = 1, c1 c2 = q c2 c1, both of degree 1 in Z_d.
SampleAlgebraPtr clock_shift(int64_t d);
/// Rotation algebra generated by u, w with u w = e^{2 pi i alpha} w u, Z^2 graded.
SampleAlgebraPtr nc_torus(const Phase &alpha);
/// One unitary c with c^d = 1, Z_d graded with c of degree 1.
SampleAlgebraPtr parafermion(int64_t d);

}  // namespace gradechain

#endif
