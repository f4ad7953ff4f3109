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

#ifndef GRADECHAIN_DEGREES_H
#define GRADECHAIN_DEGREES_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradechain/scalars.h"

namespace gradechain {

/// Integer coordinates of an element of Z^a + Z_{n_1} + ... + Z_{n_k}.
using Element = std::vector<int64_t>;

std::string element_str(const Element &e);

/// Finitely generated abelian group Z^free_rank + (+)_i Z_{n_i}. Torsion
/// coordinates are stored reduced into [0, n_i).
class DegreeGroup {
   public:
    DegreeGroup() = default;
    DegreeGroup(int free_rank, std::vector<int64_t> torsion_orders);
    static DegreeGroup cyclic(int64_t n) {
        return DegreeGroup(0, {n});
    }
    static DegreeGroup lattice(int rank) {
        return DegreeGroup(rank, {});
    }

    int free_rank() const {
        return free_rank_;
    }
    const std::vector<int64_t> &torsion_orders() const {
        return torsion_;
    }
    /// Number of coordinates, a + k.
    size_t rank() const {
        return (size_t)free_rank_ + torsion_.size();
    }
    /// Order of coordinate i, or 0 for a free coordinate.
    int64_t coordinate_order(size_t i) const;
    bool is_finite() const {
        return free_rank_ == 0;
    }
    /// Throws InfiniteGroup for a group with free part.
    int64_t order() const;

    Element zero() const {
        return Element(rank(), 0);
    }
    Element generator(size_t i) const;
    /// Reduces torsion coordinates; throws WrongGroup on length mismatch.
    Element reduce(Element e) const;
    Element add(const Element &a, const Element &b) const;
    Element negate(const Element &a) const;
    Element subtract(const Element &a, const Element &b) const {
        return add(a, negate(b));
    }
    Element scale(const Element &a, int64_t k) const;
    bool is_zero(const Element &a) const;

    /// All elements in lexicographic order. Throws InfiniteGroup.
    std::vector<Element> elements() const;
    /// Position of a reduced element in elements().
    size_t index_of(const Element &e) const;

    bool operator==(const DegreeGroup &o) const = default;
    std::string str() const;

   private:
    void check_length(const Element &e) const;
    int free_rank_ = 0;
    std::vector<int64_t> torsion_;
};

/// Subgroup generated by a finite list of elements. Membership is decided
/// exactly by reducing against a Hermite normal form of the generators with
/// the torsion relations n_i * e_i adjoined.
class Subgroup {
   public:
    Subgroup(DegreeGroup parent, std::vector<Element> generators);

    const DegreeGroup &parent() const {
        return parent_;
    }
    const std::vector<Element> &generators() const {
        return generators_;
    }
    bool contains(const Element &e) const;
    /// Sorted element list (finite parents only).
    std::vector<Element> elements() const;
    int64_t order() const;
    bool is_subgroup_of(const Subgroup &o) const;
    bool operator==(const Subgroup &o) const;
    std::string str() const;

   private:
    DegreeGroup parent_;
    std::vector<Element> generators_;
    std::vector<std::vector<int64_t>> basis_;
    std::vector<size_t> pivots_;
};

Subgroup subgroup_generated(const DegreeGroup &parent, const std::vector<Element> &gens);

/// Phase valued bilinear pairing v on a degree group, given by its values on
/// generator pairs: v(x, y) = sum_ij x_i B_ij y_j.
class Bicharacter {
   public:
    Bicharacter(DegreeGroup group, std::vector<std::vector<Phase>> matrix);
    static Bicharacter trivial(const DegreeGroup &group);
    /// Entries a_ij / denominator.
    static Bicharacter from_integer_matrix(const DegreeGroup &group,
                                           const std::vector<std::vector<int64_t>> &a,
                                           int64_t denominator);

    const DegreeGroup &group() const {
        return group_;
    }
    const std::vector<std::vector<Phase>> &matrix() const {
        return matrix_;
    }
    Phase operator()(const Element &x, const Element &y) const;

   private:
    DegreeGroup group_;
    std::vector<std::vector<Phase>> matrix_;
};

Phase bichar_eval(const Bicharacter &v, const Element &x, const Element &y);

struct BicharClass {
    bool symmetric;
    bool antisymmetric;
};
BicharClass bichar_classify(const Bicharacter &v);

/// v_S(x, y) = v(x, y) + v(y, x) in additive phase notation.
Bicharacter symmetrized(const Bicharacter &v);

struct IsotropySet {
    std::vector<Element> elements;
    bool is_subgroup;
};
/// {x : v(x, x) = 0 mod 1}. Throws InfiniteGroup.
IsotropySet delta_v(const Bicharacter &v);

/// True iff v vanishes on S x S.
bool is_isotropic(const Bicharacter &v, const Subgroup &s);

/// Subgroups maximal among those on which v vanishes identically, ordered
/// lexicographically by their sorted element lists. Throws InfiniteGroup.
std::vector<Subgroup> maximal_isotropic_subgroups(const Bicharacter &v);

}  // namespace gradechain

#endif
