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

#ifndef STEADE_DE_HPP
#define STEADE_DE_HPP

#include "steade/common.hpp"
#include "steade/rng.hpp"

#include <utility>

namespace steade {

struct DeConfig {
  std::size_t population_size = 16;
  double F = 0.7;
  double Cr = 0.7;

  void validate() const;
};

struct Population {
  PointSet X;      // target vectors, one per row
  Vector fitness;  // +inf marks failed or not-yet-evaluated members
  std::size_t generation = 1;
};

// Base and difference pools for the Bayesian mutation, tiled to Np rows.
struct CandidatePools {
  PointSet B;  // from the GP batch acquisition
  PointSet R;  // from the RBF search
};

struct IndexTriple {
  std::size_t r1;
  std::size_t r2;
  std::size_t r3;
};

// Mutually distinct indices in [0, np), all different from i. Throws when np < 4.
IndexTriple sample_distinct_indices(std::size_t np, std::size_t i, Rng& rng);

// Repeats the rows of batch cyclically until there are `rows` of them.
PointSet tile_rows(const PointSet& batch, std::size_t rows);

// Mirrors coordinates that left [0,1] back inside; clips after 8 reflections.
Vector reflect_into_cube(Vector v);

// V = B[r1] + F (R[r2] - R[r3]) + (1/G) rand (.) (X[r2] - X[r3]), with a
// fresh uniform rand vector per donor, then reflected into the cube.
Vector bayesian_mutation(const Population& pop, const CandidatePools& pools,
                         const IndexTriple& idx, std::size_t G, double F, Rng& rng);

// Same, with the uniform vector supplied by the caller.
Vector bayesian_mutation(const Population& pop, const CandidatePools& pools,
                         const IndexTriple& idx, std::size_t G, double F, const Vector& uniform);

// Classic DE/rand/1: V = X[r1] + F (X[r2] - X[r3]), reflected into the cube.
Vector rand1_mutation(const PointSet& X, const IndexTriple& idx, double F);

// Binomial crossover: u_j = v_j when rand_j <= Cr or j == j_rand, else x_j.
Vector binomial_crossover(const Vector& x, const Vector& v, double Cr, Rng& rng);

// Greedy selection; ties go to the trial vector, NaN counts as +inf and a
// NaN-vs-NaN tie keeps the incumbent.
std::pair<Vector, double> select(const Vector& x, const Vector& u, double fx, double fu);

// true when the trial (fitness fu) replaces the incumbent (fitness fx).
bool trial_wins(double fx, double fu);

}  // namespace steade

#endif  // STEADE_DE_HPP
