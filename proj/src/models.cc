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

#include "gradechain/models.h"

namespace gradechain {

Bicharacter z3_squared_bicharacter() {
    DegreeGroup g(0, {3, 3});
    return Bicharacter::from_integer_matrix(g, {{0, 1}, {1, 1}}, 3);
}

ChainContextPtr car_chain() {
    return clock_shift_chain(2);
}

ChainContextPtr circle_chain(const Phase &alpha) {
    DegreeGroup z = DegreeGroup::lattice(1);
    return make_chain(function_algebra(z, {"u"}), Bicharacter(z, {{alpha}}));
}

ChainContextPtr torus_pair_chain(const Phase &alpha, const Phase &theta) {
    DegreeGroup z2 = DegreeGroup::lattice(2);
    return make_chain(nc_torus(alpha), Bicharacter(z2, {{theta, Phase()}, {Phase(), theta}}));
}

ChainContextPtr parafermion_chain(int64_t d) {
    return make_chain(parafermion(d), Bicharacter::from_integer_matrix(DegreeGroup::cyclic(d), {{1}}, d));
}

ChainContextPtr clock_shift_chain(int64_t d) {
    return make_chain(clock_shift(d), Bicharacter::from_integer_matrix(DegreeGroup::cyclic(d), {{1}}, d));
}

ChainContextPtr z3_squared_chain() {
    Bicharacter v = z3_squared_bicharacter();
    return make_chain(function_algebra(v.group()), v);
}

}  // namespace gradechain
