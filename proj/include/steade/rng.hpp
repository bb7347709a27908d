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

#ifndef STEADE_RNG_HPP
#define STEADE_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace steade {

// SplitMix64 finalizer. Used for seed derivation and hash-based scrambling.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a base seed and a tuple of tags,
// e.g. derive_seed(seed, {iteration, slot}).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

// FNV-1a hash of a string; stable across platforms.
std::uint64_t hash_name(std::string_view name);

// Seeded random source. The conversions to doubles are done here rather than
// through <random> distributions so that streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (no cached second variate).
  double normal();

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace steade

#endif  // STEADE_RNG_HPP
