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

#include "gradechain/degrees.h"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

#include "gradechain/error.h"

namespace gradechain {

std::string element_str(const Element &e) {
    std::string out = "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += std::to_string(e[i]);
    }
    return out + ")";
}

namespace {

int64_t mod_floor(int64_t a, int64_t n) {
    int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

// ---------------------------------------------------------------- DegreeGroup

DegreeGroup::DegreeGroup(int free_rank, std::vector<int64_t> torsion_orders)
    : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
    if (free_rank_ < 0) {
        throw Error(ErrorKind::BadParameter, "negative free rank");
    }
    for (int64_t n : torsion_) {
        if (n < 2) {
            throw Error(ErrorKind::BadParameter, "torsion orders must be >= 2, got " + std::to_string(n));
        }
    }
}

int64_t DegreeGroup::coordinate_order(size_t i) const {
    return i < (size_t)free_rank_ ? 0 : torsion_[i - free_rank_];
}

int64_t DegreeGroup::order() const {
    if (!is_finite()) {
        throw Error(ErrorKind::InfiniteGroup, "group " + str() + " is infinite");
    }
    int64_t n = 1;
    for (int64_t t : torsion_) {
        n *= t;
    }
    return n;
}

Element DegreeGroup::generator(size_t i) const {
    Element e = zero();
    e.at(i) = 1;
    return e;
}

void DegreeGroup::check_length(const Element &e) const {
    if (e.size() != rank()) {
        throw Error(ErrorKind::WrongGroup,
                    "element " + element_str(e) + " has " + std::to_string(e.size()) + " coordinates, group " +
                        str() + " has " + std::to_string(rank()));
    }
}

Element DegreeGroup::reduce(Element e) const {
    check_length(e);
    for (size_t i = free_rank_; i < e.size(); ++i) {
        e[i] = mod_floor(e[i], torsion_[i - free_rank_]);
    }
    return e;
}

Element DegreeGroup::add(const Element &a, const Element &b) const {
    check_length(a);
    check_length(b);
    Element r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return reduce(std::move(r));
}

Element DegreeGroup::negate(const Element &a) const {
    return scale(a, -1);
}

Element DegreeGroup::scale(const Element &a, int64_t k) const {
    check_length(a);
    Element r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * k;
    }
    return reduce(std::move(r));
}

bool DegreeGroup::is_zero(const Element &a) const {
    Element r = reduce(a);
    return std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0; });
}

std::vector<Element> DegreeGroup::elements() const {
    int64_t n = order();
    std::vector<Element> out;
    out.reserve(n);
    Element cur = zero();
    for (int64_t k = 0; k < n; ++k) {
        out.push_back(cur);
        for (size_t i = cur.size(); i-- > 0;) {
            if (++cur[i] < torsion_[i]) {
                break;
            }
            cur[i] = 0;
        }
    }
    return out;
}

size_t DegreeGroup::index_of(const Element &e) const {
    Element r = reduce(e);
    if (!is_finite()) {
        throw Error(ErrorKind::InfiniteGroup, "index_of on infinite group");
    }
    size_t idx = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        idx = idx * torsion_[i] + r[i];
    }
    return idx;
}

std::string DegreeGroup::str() const {
    std::string out;
    if (free_rank_ > 0 || torsion_.empty()) {
        out = "Z^" + std::to_string(free_rank_);
    }
    for (int64_t n : torsion_) {
        if (!out.empty()) {
            out += " x ";
        }
        out += "Z_" + std::to_string(n);
    }
    return out;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(DegreeGroup parent, std::vector<Element> generators)
    : parent_(std::move(parent)), generators_() {
    for (auto &g : generators) {
        generators_.push_back(parent_.reduce(g));
    }
    size_t n = parent_.rank();
    std::vector<std::vector<int64_t>> rows = generators_;
    for (size_t i = parent_.free_rank(); i < n; ++i) {
        std::vector<int64_t> rel(n, 0);
        rel[i] = parent_.coordinate_order(i);
        rows.push_back(rel);
    }
    size_t r = 0;
    for (size_t col = 0; col < n && r < rows.size(); ++col) {
        while (true) {
            size_t best = rows.size();
            for (size_t k = r; k < rows.size(); ++k) {
                if (rows[k][col] != 0 && (best == rows.size() || std::llabs(rows[k][col]) < std::llabs(rows[best][col]))) {
                    best = k;
                }
            }
            if (best == rows.size()) {
                break;
            }
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t k = r + 1; k < rows.size(); ++k) {
                if (rows[k][col] == 0) {
                    continue;
                }
                int64_t q = rows[k][col] / rows[r][col];
                for (size_t j = col; j < n; ++j) {
                    rows[k][j] -= q * rows[r][j];
                }
                if (rows[k][col] != 0) {
                    clean = false;
                }
            }
            if (clean) {
                if (rows[r][col] < 0) {
                    for (auto &x : rows[r]) {
                        x = -x;
                    }
                }
                basis_.push_back(rows[r]);
                pivots_.push_back(col);
                ++r;
                break;
            }
        }
    }
}

bool Subgroup::contains(const Element &e) const {
    Element x = parent_.reduce(e);
    for (size_t b = 0; b < basis_.size(); ++b) {
        size_t p = pivots_[b];
        if (x[p] % basis_[b][p] != 0) {
            return false;
        }
        int64_t q = x[p] / basis_[b][p];
        for (size_t j = p; j < x.size(); ++j) {
            x[j] -= q * basis_[b][j];
        }
    }
    return std::all_of(x.begin(), x.end(), [](int64_t v) { return v == 0; });
}

std::vector<Element> Subgroup::elements() const {
    std::vector<Element> out;
    for (auto &e : parent_.elements()) {
        if (contains(e)) {
            out.push_back(std::move(e));
        }
    }
    return out;
}

int64_t Subgroup::order() const {
    return (int64_t)elements().size();
}

bool Subgroup::is_subgroup_of(const Subgroup &o) const {
    return std::all_of(generators_.begin(), generators_.end(), [&](const Element &g) { return o.contains(g); });
}

bool Subgroup::operator==(const Subgroup &o) const {
    return parent_ == o.parent_ && is_subgroup_of(o) && o.is_subgroup_of(*this);
}

std::string Subgroup::str() const {
    std::string out = "<";
    for (size_t i = 0; i < generators_.size(); ++i) {
        out += (i ? "," : "") + element_str(generators_[i]);
    }
    return out + ">";
}

Subgroup subgroup_generated(const DegreeGroup &parent, const std::vector<Element> &gens) {
    return Subgroup(parent, gens);
}

// ---------------------------------------------------------------- Bicharacter

Bicharacter::Bicharacter(DegreeGroup group, std::vector<std::vector<Phase>> matrix)
    : group_(std::move(group)), matrix_(std::move(matrix)) {
    size_t n = group_.rank();
    if (matrix_.size() != n) {
        throw Error(ErrorKind::BadParameter, "bicharacter matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (size_t i = 0; i < n; ++i) {
        if (matrix_[i].size() != n) {
            throw Error(ErrorKind::BadParameter, "bicharacter matrix row " + std::to_string(i) + " has wrong length");
        }
        for (size_t j = 0; j < n; ++j) {
            for (int64_t order : {group_.coordinate_order(i), group_.coordinate_order(j)}) {
                if (order != 0 && !(matrix_[i][j] * order).is_zero()) {
                    throw Error(ErrorKind::BadParameter, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                             ") = " + matrix_[i][j].str() +
                                                             " is incompatible with torsion order " +
                                                             std::to_string(order));
                }
            }
        }
    }
}

Bicharacter Bicharacter::trivial(const DegreeGroup &group) {
    return Bicharacter(group, std::vector<std::vector<Phase>>(group.rank(), std::vector<Phase>(group.rank())));
}

Bicharacter Bicharacter::from_integer_matrix(const DegreeGroup &group,
                                             const std::vector<std::vector<int64_t>> &a,
                                             int64_t denominator) {
    std::vector<std::vector<Phase>> m(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        for (int64_t x : a[i]) {
            m[i].push_back(Phase(Rational(x, denominator)));
        }
    }
    return Bicharacter(group, std::move(m));
}

Phase Bicharacter::operator()(const Element &x, const Element &y) const {
    Element xr = group_.reduce(x);
    Element yr = group_.reduce(y);
    Phase total;
    for (size_t i = 0; i < xr.size(); ++i) {
        if (xr[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < yr.size(); ++j) {
            if (yr[j] != 0) {
                total += matrix_[i][j] * (xr[i] * yr[j]);
            }
        }
    }
    return total;
}

Phase bichar_eval(const Bicharacter &v, const Element &x, const Element &y) {
    return v(x, y);
}

BicharClass bichar_classify(const Bicharacter &v) {
    BicharClass c{true, true};
    const auto &m = v.matrix();
    for (size_t i = 0; i < m.size(); ++i) {
        for (size_t j = 0; j < m.size(); ++j) {
            if (!(m[i][j] == m[j][i])) {
                c.symmetric = false;
            }
            if (!(m[i][j] == -m[j][i])) {
                c.antisymmetric = false;
            }
        }
    }
    return c;
}

Bicharacter symmetrized(const Bicharacter &v) {
    auto m = v.matrix();
    for (size_t i = 0; i < m.size(); ++i) {
        for (size_t j = 0; j < m.size(); ++j) {
            m[i][j] = v.matrix()[i][j] + v.matrix()[j][i];
        }
    }
    return Bicharacter(v.group(), std::move(m));
}

IsotropySet delta_v(const Bicharacter &v) {
    IsotropySet out{{}, true};
    for (auto &e : v.group().elements()) {
        if (v(e, e).is_zero()) {
            out.elements.push_back(std::move(e));
        }
    }
    std::set<Element> members(out.elements.begin(), out.elements.end());
    for (const auto &a : out.elements) {
        for (const auto &b : out.elements) {
            if (!members.count(v.group().add(a, b))) {
                out.is_subgroup = false;
                return out;
            }
        }
    }
    return out;
}

bool is_isotropic(const Bicharacter &v, const Subgroup &s) {
    const auto &gens = s.generators();
    for (const auto &a : gens) {
        for (const auto &b : gens) {
            if (!v(a, b).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Subgroup> maximal_isotropic_subgroups(const Bicharacter &v) {
    const DegreeGroup &g = v.group();
    std::vector<Element> all = g.elements();

    auto membership = [&](const Subgroup &s) {
        std::vector<bool> bits(all.size());
        for (size_t i = 0; i < all.size(); ++i) {
            bits[i] = s.contains(all[i]);
        }
        return bits;
    };

    std::set<std::vector<bool>> seen;
    std::deque<Subgroup> queue;
    std::vector<std::pair<std::vector<Element>, Subgroup>> maximal;
    Subgroup trivial(g, {});
    seen.insert(membership(trivial));
    queue.push_back(trivial);
    while (!queue.empty()) {
        Subgroup s = std::move(queue.front());
        queue.pop_front();
        bool extended = false;
        for (const auto &x : all) {
            if (s.contains(x) || !v(x, x).is_zero()) {
                continue;
            }
            bool ok = true;
            for (const auto &gen : s.generators()) {
                if (!v(x, gen).is_zero() || !v(gen, x).is_zero()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            extended = true;
            auto gens = s.generators();
            gens.push_back(x);
            Subgroup t(g, gens);
            if (seen.insert(membership(t)).second) {
                queue.push_back(std::move(t));
            }
        }
        if (!extended) {
            maximal.emplace_back(s.elements(), s);
        }
    }
    std::sort(maximal.begin(), maximal.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<Subgroup> out;
    for (auto &[elements, s] : maximal) {
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace gradechain
