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

#include "gradechain/sample.h"

#include <Eigen/Dense>
#include <algorithm>

#include "gradechain/error.h"

namespace gradechain {

namespace {

void check_phase_matrix(const DegreeGroup &g, const std::vector<std::vector<Phase>> &m, const char *what) {
    size_t n = g.rank();
    if (m.size() != n || std::any_of(m.begin(), m.end(), [&](const auto &row) { return row.size() != n; })) {
        throw Error(ErrorKind::BadParameter, std::string(what) + " matrix has the wrong shape");
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            for (int64_t order : {g.coordinate_order(i), g.coordinate_order(j)}) {
                if (order != 0 && !(m[i][j] * order).is_zero()) {
                    throw Error(ErrorKind::BadParameter,
                                std::string(what) + " entry " + m[i][j].str() + " incompatible with torsion");
                }
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- SampleAlgebra

SampleAlgebra::SampleAlgebra(std::string kind,
                             std::vector<std::string> generator_names,
                             DegreeGroup index_group,
                             std::vector<std::vector<Phase>> cocycle,
                             DegreeGroup degree_group,
                             std::vector<Element> degree_images)
    : kind_(std::move(kind)),
      names_(std::move(generator_names)),
      index_(std::move(index_group)),
      cocycle_(std::move(cocycle)),
      degrees_(std::move(degree_group)),
      degree_images_(std::move(degree_images)) {
    if (names_.size() != index_.rank()) {
        throw Error(ErrorKind::BadParameter, "need one generator name per index coordinate");
    }
    check_phase_matrix(index_, cocycle_, "cocycle");
    if (degree_images_.size() != index_.rank()) {
        throw Error(ErrorKind::BadParameter, "need one degree image per index coordinate");
    }
    for (size_t i = 0; i < degree_images_.size(); ++i) {
        degree_images_[i] = degrees_.reduce(degree_images_[i]);
        int64_t order = index_.coordinate_order(i);
        if (order != 0 && !degrees_.is_zero(degrees_.scale(degree_images_[i], order))) {
            throw Error(ErrorKind::BadParameter, "degree map does not respect the order of generator " + names_[i]);
        }
    }
}

SymbolTablePtr SampleAlgebra::symbols() const {
    for (const auto &row : cocycle_) {
        for (const auto &p : row) {
            if (p.table()) {
                return p.table();
            }
        }
    }
    return nullptr;
}

Phase SampleAlgebra::cocycle(const Element &m, const Element &n) const {
    Element mr = index_.reduce(m);
    Element nr = index_.reduce(n);
    Phase total;
    for (size_t i = 0; i < mr.size(); ++i) {
        if (mr[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < nr.size(); ++j) {
            if (nr[j] != 0 && !cocycle_[i][j].is_zero()) {
                total += cocycle_[i][j] * (mr[i] * nr[j]);
            }
        }
    }
    return total;
}

Element SampleAlgebra::degree(const Element &m) const {
    Element mr = index_.reduce(m);
    Element d = degrees_.zero();
    for (size_t i = 0; i < mr.size(); ++i) {
        if (mr[i] != 0) {
            d = degrees_.add(d, degrees_.scale(degree_images_[i], mr[i]));
        }
    }
    return d;
}

Phase SampleAlgebra::star_phase(const Element &m) const {
    return cocycle(m, m);
}

std::optional<size_t> SampleAlgebra::generator_index(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return (size_t)(it - names_.begin());
}

std::string SampleAlgebra::basis_str(const Element &m) const {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) {
            out += " ";
        }
        out += names_[i] + "^" + std::to_string(m[i]);
    }
    return out;
}

// ---------------------------------------------------------------- SampleElement

SampleElement::SampleElement(SampleAlgebraPtr algebra) : algebra_(std::move(algebra)) {
}

SampleElement SampleElement::basis(SampleAlgebraPtr algebra, const Element &m, ExactScalar coefficient) {
    SampleElement x(algebra);
    x.add_term(algebra->index_group().reduce(m), coefficient);
    return x;
}

SampleElement SampleElement::unit(SampleAlgebraPtr algebra) {
    Element zero = algebra->index_group().zero();
    return basis(std::move(algebra), zero);
}

void SampleElement::add_term(const Element &m, const ExactScalar &c) {
    Element key = algebra_->index_group().reduce(m);
    auto [it, inserted] = support_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
    }
    if (it->second.is_zero()) {
        support_.erase(it);
    }
}

std::optional<Element> SampleElement::homogeneous_degree() const {
    std::optional<Element> deg;
    for (const auto &[m, c] : support_) {
        Element d = algebra_->degree(m);
        if (deg && *deg != d) {
            return std::nullopt;
        }
        deg = d;
    }
    if (!deg) {
        return algebra_->degree_group().zero();
    }
    return deg;
}

static void check_same(const SampleElement &x, const SampleElement &y) {
    if (x.algebra() != y.algebra()) {
        throw Error(ErrorKind::AlgebraMismatch, "sample elements belong to different algebras");
    }
}

SampleElement SampleElement::operator+(const SampleElement &o) const {
    check_same(*this, o);
    SampleElement r = *this;
    for (const auto &[m, c] : o.support_) {
        r.add_term(m, c);
    }
    return r;
}

SampleElement SampleElement::operator-(const SampleElement &o) const {
    return *this + o.scaled(ExactScalar(-1));
}

SampleElement SampleElement::operator*(const SampleElement &o) const {
    return sample_mul(*this, o);
}

SampleElement SampleElement::scaled(const ExactScalar &s) const {
    SampleElement r(algebra_);
    for (const auto &[m, c] : support_) {
        r.add_term(m, c * s);
    }
    return r;
}

SampleElement SampleElement::star() const {
    SampleElement r(algebra_);
    const DegreeGroup &idx = algebra_->index_group();
    for (const auto &[m, c] : support_) {
        r.add_term(idx.negate(m), c.conj().rotated(algebra_->star_phase(m)));
    }
    return r;
}

bool SampleElement::operator==(const SampleElement &o) const {
    return algebra_ == o.algebra_ && (*this - o).is_zero();
}

std::string SampleElement::str() const {
    if (support_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : support_) {
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + c.str() + ") [" + algebra_->basis_str(m) + "]";
    }
    return out;
}

SampleElement sample_mul(const SampleElement &x, const SampleElement &y) {
    check_same(x, y);
    const SampleAlgebra &alg = *x.algebra();
    SampleElement r(x.algebra());
    for (const auto &[m, c1] : x.support()) {
        for (const auto &[n, c2] : y.support()) {
            r.add_term(alg.index_group().add(m, n), (c1 * c2).rotated(alg.cocycle(m, n)));
        }
    }
    return r;
}

SampleElement spectral_projection(const SampleElement &x, const Subgroup &s) {
    const SampleAlgebra &alg = *x.algebra();
    if (!(s.parent() == alg.degree_group())) {
        throw Error(ErrorKind::WrongGroup, "subgroup does not live in the degree group of the sample");
    }
    SampleElement r(x.algebra());
    for (const auto &[m, c] : x.support()) {
        if (s.contains(alg.degree(m))) {
            r.add_term(m, c);
        }
    }
    return r;
}

// ---------------------------------------------------------------- SampleState

SampleState::SampleState(SampleAlgebraPtr algebra, std::map<Element, ExactScalar> values)
    : algebra_(std::move(algebra)) {
    const DegreeGroup &idx = algebra_->index_group();
    for (auto &[m, c] : values) {
        if (c.is_zero()) {
            continue;
        }
        Element key = idx.reduce(m);
        auto [it, inserted] = values_.try_emplace(key, c);
        if (!inserted) {
            throw Error(ErrorKind::BadParameter, "state table lists " + element_str(key) + " twice");
        }
    }
    if (!((*this)(idx.zero()) == ExactScalar(1))) {
        throw Error(ErrorKind::BadParameter, "state is not normalized: omega(1) != 1");
    }
    for (const auto &[m, c] : values_) {
        ExactScalar of_star = (*this)(idx.negate(m)).rotated(algebra_->star_phase(m));
        if (!(of_star == c.conj())) {
            throw Error(ErrorKind::BadParameter, "state is not hermitian at " + element_str(m));
        }
    }
}

SampleState SampleState::trace(SampleAlgebraPtr algebra) {
    Element zero = algebra->index_group().zero();
    return SampleState(std::move(algebra), {{zero, ExactScalar(1)}});
}

ExactScalar SampleState::operator()(const Element &m) const {
    auto it = values_.find(algebra_->index_group().reduce(m));
    return it == values_.end() ? ExactScalar() : it->second;
}

ExactScalar SampleState::evaluate(const SampleElement &x) const {
    if (x.algebra() != algebra_) {
        throw Error(ErrorKind::AlgebraMismatch, "state and element belong to different algebras");
    }
    ExactScalar total;
    for (const auto &[m, c] : x.support()) {
        total += c * (*this)(m);
    }
    return total;
}

std::set<Element> spectral_support(const SampleState &omega) {
    std::set<Element> out;
    for (const auto &[m, c] : omega.values()) {
        if (!c.is_zero()) {
            out.insert(omega.algebra()->degree(m));
        }
    }
    return out;
}

PositivityVerdict state_positivity(const SampleState &omega,
                                   const std::vector<Element> &window,
                                   const Assignment &assignment) {
    const auto &alg = omega.algebra();
    Assignment values = assignment.empty() ? generic_assignment(alg->symbols()) : assignment;
    size_t n = window.size();
    Eigen::MatrixXcd gram(n, n);
    for (size_t a = 0; a < n; ++a) {
        SampleElement left = SampleElement::basis(alg, window[a]).star();
        for (size_t b = 0; b < n; ++b) {
            SampleElement prod = left * SampleElement::basis(alg, window[b]);
            gram(a, b) = omega.evaluate(prod).evaluate(values);
        }
    }
    PositivityVerdict verdict{true, 0.0, {}};
    if (n == 0) {
        return verdict;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
    verdict.min_eigenvalue = solver.eigenvalues()(0);
    verdict.positive = verdict.min_eigenvalue >= -kNumericTolerance;
    if (!verdict.positive) {
        auto vec = solver.eigenvectors().col(0);
        verdict.witness.assign(vec.data(), vec.data() + n);
    }
    return verdict;
}

// ---------------------------------------------------------------- standard samples

SampleAlgebraPtr function_algebra(const DegreeGroup &dual, std::vector<std::string> names) {
    size_t r = dual.rank();
    if (names.empty()) {
        if (r == 1) {
            names = {"u"};
        } else {
            for (size_t i = 0; i < r; ++i) {
                names.push_back("g" + std::to_string(i + 1));
            }
        }
    }
    std::vector<Element> images;
    for (size_t i = 0; i < r; ++i) {
        images.push_back(dual.generator(i));
    }
    return std::make_shared<const SampleAlgebra>("function_algebra", std::move(names), dual,
                                                 std::vector<std::vector<Phase>>(r, std::vector<Phase>(r)), dual,
                                                 std::move(images));
}

SampleAlgebraPtr clock_shift(int64_t d) {
    if (d < 2) {
        throw Error(ErrorKind::BadParameter, "clock_shift needs d >= 2");
    }
    std::vector<std::vector<Phase>> c = {{Phase(), Phase(Rational(1, d))}, {Phase(), Phase()}};
    return std::make_shared<const SampleAlgebra>("clock_shift", std::vector<std::string>{"c1", "c2"},
                                                 DegreeGroup(0, {d, d}), std::move(c), DegreeGroup::cyclic(d),
                                                 std::vector<Element>{{1}, {1}});
}

SampleAlgebraPtr nc_torus(const Phase &alpha) {
    std::vector<std::vector<Phase>> c = {{Phase(), alpha}, {Phase(), Phase()}};
    return std::make_shared<const SampleAlgebra>("nc_torus", std::vector<std::string>{"u", "w"},
                                                 DegreeGroup::lattice(2), std::move(c), DegreeGroup::lattice(2),
                                                 std::vector<Element>{{1, 0}, {0, 1}});
}

SampleAlgebraPtr parafermion(int64_t d) {
    if (d < 2) {
        throw Error(ErrorKind::BadParameter, "parafermion needs d >= 2");
    }
    return std::make_shared<const SampleAlgebra>("parafermion", std::vector<std::string>{"c"},
                                                 DegreeGroup::cyclic(d),
                                                 std::vector<std::vector<Phase>>{{Phase()}}, DegreeGroup::cyclic(d),
                                                 std::vector<Element>{{1}});
}

SampleAlgebraPtr build_standard_sample(const SampleSpec &spec) {
    SampleAlgebraPtr out;
    switch (spec.kind) {
        case SampleKind::FunctionAlgebra:
            if (spec.group.rank() == 0) {
                throw Error(ErrorKind::BadParameter, "function_algebra needs a nontrivial degree group");
            }
            return function_algebra(spec.group, spec.names);
        case SampleKind::ClockShift:
            out = clock_shift(spec.d);
            break;
        case SampleKind::NcTorus:
            out = nc_torus(spec.alpha);
            break;
        case SampleKind::Parafermion:
            out = parafermion(spec.d);
            break;
    }
    if (!spec.names.empty()) {
        if (spec.names.size() != out->generator_names().size()) {
            throw Error(ErrorKind::BadParameter, "wrong number of generator names");
        }
        out = std::make_shared<const SampleAlgebra>(out->kind(), spec.names, out->index_group(),
                                                    out->cocycle_matrix(), out->degree_group(), [&] {
                                                        std::vector<Element> images;
                                                        for (size_t i = 0; i < out->index_group().rank(); ++i) {
                                                            images.push_back(out->degree(out->index_group().generator(i)));
                                                        }
                                                        return images;
                                                    }());
    }
    return out;
}

}  // namespace gradechain
