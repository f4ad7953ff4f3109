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

#ifndef GRADECHAIN_MODELS_H
#define GRADECHAIN_MODELS_H

#include "gradechain/chain.h"

namespace gradechain {

/// v(x, y) = <A x, y> / 3 on Z_3 x Z_3 with A = [[0, 1], [1, 1]].
Bicharacter z3_squared_bicharacter();

/// clock_shift(2) with v(k, l) = kl / 2.
ChainContextPtr car_chain();

/// Functions on the circle (one unitary u per site) with v(k, l) = alpha k l.
ChainContextPtr circle_chain(const Phase &alpha);

/// nc_torus(alpha) with v(k, l) = theta (k1 l1 + k2 l2).
ChainContextPtr torus_pair_chain(const Phase &alpha, const Phase &theta);

/// One unitary c with c^d = 1 per site and v(k, l) = kl / d.
ChainContextPtr parafermion_chain(int64_t d);

/// clock_shift(d) with v(k, l) = kl / d.
ChainContextPtr clock_shift_chain(int64_t d);

/// Functions on Z_3 x Z_3 twisted by z3_squared_bicharacter().
ChainContextPtr z3_squared_chain();

}  // namespace gradechain

#endif
