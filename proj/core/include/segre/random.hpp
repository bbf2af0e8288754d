// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Seeded randomness with a portable, fully specified draw sequence.
//
// std::uniform_int_distribution is implementation-defined, so bounded draws
// are done here by rejection on the raw mt19937_64 output. Identical seeds
// give identical outputs on every platform.

#ifndef SEGRE_RANDOM_HPP_
#define SEGRE_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "segre/field.hpp"
#include "segre/multiproj.hpp"

namespace segre {

using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent stream seeds from (seed, index).
std::uint64_t splitmix64(std::uint64_t x);
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL)));
}

// Uniform in [0, n); n > 0.
std::uint64_t draw_below(Rng& rng, std::uint64_t n);

// Over GF(p): uniform field element. Over Q: uniform integer in [-4, 4].
Scalar random_scalar(Rng& rng, const FieldSpec& field);

// Uniform point of P^n(GF(p)); over Q, a point with entries in [-4, 4].
ProjPoint random_factor_point(Rng& rng, const FieldSpec& field, int n);
MultiPoint random_point(Rng& rng, const MultiprojectiveSpace& y);

}  // namespace segre

#endif  // SEGRE_RANDOM_HPP_
