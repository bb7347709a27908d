/*
 * Copyright 2026 The STEADE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STEADE_DESIGN_HPP
#define STEADE_DESIGN_HPP

#include "steade/common.hpp"
#include "steade/rng.hpp"

namespace steade {

// Symmetric Latin hypercube design of n points in [0,1]^dim.
//
// Level k (1-based) sits at the cell midpoint (k - 0.5) / n. Rows i and
// n-1-i are mirror images (they sum to 1 coordinate-wise); for odd n the
// middle row is the cube center. Which level pair lands on which mirror row
// pair, and which half of the pair goes first, is randomized per column.
// Throws std::invalid_argument when n or dim is zero.
PointSet slhd(std::size_t n, std::size_t dim, Rng& rng);

}  // namespace steade

#endif  // STEADE_DESIGN_HPP
