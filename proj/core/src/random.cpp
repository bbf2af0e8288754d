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


#include "segre/random.hpp"

#include <algorithm>

namespace segre {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  // Largest multiple of n representable; reject above it.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

Scalar random_scalar(Rng& rng, const FieldSpec& field) {
  if (field.is_finite()) {
    return Scalar::residue(static_cast<std::uint32_t>(draw_below(rng, field.modulus())),
                           field.modulus());
  }
  return Scalar::from_int(field, static_cast<long long>(draw_below(rng, 9)) - 4);
}

ProjPoint random_factor_point(Rng& rng, const FieldSpec& field, int n) {
  Vector v(static_cast<std::size_t>(n) + 1, Scalar::zero(field));
  // Uniform nonzero vectors give uniform projective points over GF(p).
  while (true) {
    for (auto& x : v) x = random_scalar(rng, field);
    if (std::any_of(v.begin(), v.end(), [](const Scalar& x) { return !x.is_zero(); })) {
      return ProjPoint::normalized(v);
    }
  }
}

MultiPoint random_point(Rng& rng, const MultiprojectiveSpace& y) {
  std::vector<ProjPoint> comps;
  comps.reserve(y.factors());
  for (int n : y.dims()) comps.push_back(random_factor_point(rng, y.field(), n));
  return MultiPoint(std::move(comps));
}

}  // namespace segre
