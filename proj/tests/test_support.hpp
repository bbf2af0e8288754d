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

// Seeded generators and brute-force oracles shared by the unit tests. The
// oracles deliberately avoid the library's kernels.

#ifndef SEGRE_TESTS_TEST_SUPPORT_HPP_
#define SEGRE_TESTS_TEST_SUPPORT_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "segre/field.hpp"
#include "segre/linalg.hpp"
#include "segre/multiproj.hpp"

namespace segre::testing {

inline Scalar random_scalar(std::mt19937_64& rng, const FieldSpec& f,
                            int zero_bias = 0) {
  if (zero_bias > 0 && rng() % static_cast<unsigned>(zero_bias + 1) != 0) {
    return Scalar::zero(f);
  }
  if (f.is_finite()) return Scalar::residue(rng() % f.modulus(), f.modulus());
  const long num = static_cast<long>(rng() % 19) - 9;
  const long den = static_cast<long>(rng() % 5) + 1;
  return Scalar::from_rational(mpq_class(num, den));
}

inline Matrix random_matrix(std::mt19937_64& rng, const FieldSpec& f,
                            std::size_t rows, std::size_t cols,
                            int zero_bias = 0) {
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(rng, f, zero_bias);
  }
  return m;
}

// Textbook Gaussian elimination on Scalars; no kernel dispatch.
inline std::size_t naive_rank(const Matrix& m) {
  std::vector<Vector> a = m.row_list();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      const Scalar f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Defect of the subset selected by mask, by naive elimination.
inline std::size_t naive_defect(const PointSet& s, std::uint64_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((mask >> i) & 1u) idx.push_back(i);
  }
  if (idx.empty()) return 0;
  return idx.size() - naive_rank(embed_set(s.subset(idx)));
}

// Literal definitions over all subsets.
inline bool literal_equally_dependent(const PointSet& s) {
  const std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
  const std::size_t e = naive_defect(s, all);
  if (e == 0) return false;
  for (std::uint64_t m = 0; m < all; ++m) {
    if (naive_defect(s, m) >= e) return false;
  }
  return true;
}

inline bool literal_uniformly_dependent(const PointSet& s) {
  const std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
  const long long e = static_cast<long long>(naive_defect(s, all));
  if (e == 0) return false;
  for (std::uint64_t m = 0; m < all; ++m) {
    const long long size = __builtin_popcountll(m);
    const long long want = std::max<long long>(0, e - static_cast<long long>(s.size()) + size);
    if (static_cast<long long>(naive_defect(s, m)) != want) return false;
  }
  return true;
}

inline bool literal_circuit(const PointSet& s) {
  const std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
  return literal_equally_dependent(s) && naive_defect(s, all) == 1;
}

// Random point of Y over a finite field or Q (small entries).
inline MultiPoint random_point(std::mt19937_64& rng, const MultiprojectiveSpace& y) {
  std::vector<ProjPoint> comps;
  for (int n : y.dims()) {
    Vector v;
    do {
      v.clear();
      for (int t = 0; t <= n; ++t) v.push_back(random_scalar(rng, y.field(), 1));
    } while (std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); }));
    comps.push_back(ProjPoint::normalized(v));
  }
  return MultiPoint(std::move(comps));
}

inline PointSet random_set(std::mt19937_64& rng, const MultiprojectiveSpace& y,
                           std::size_t size) {
  std::vector<MultiPoint> pts;
  for (std::size_t i = 0; i < size; ++i) pts.push_back(testing::random_point(rng, y));
  return PointSet(y, pts);
}

}  // namespace segre::testing

#endif  // SEGRE_TESTS_TEST_SUPPORT_HPP_
