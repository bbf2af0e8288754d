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

#include "segre/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

#include "segre/error.hpp"
#include "test_support.hpp"

namespace segre {
namespace {

using testing::naive_rank;
using testing::random_matrix;

const std::vector<FieldSpec>& fields() {
  static const std::vector<FieldSpec> f = {FieldSpec::prime(2), FieldSpec::prime(3),
                                           FieldSpec::prime(5), FieldSpec::prime(65521),
                                           FieldSpec::rationals()};
  return f;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

TEST(LinalgTest, RankMatchesNaiveElimination) {
  std::mt19937_64 rng(11);
  for (const auto& f : fields()) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
      const Matrix m = random_matrix(rng, f, r, c, static_cast<int>(rng() % 3));
      EXPECT_EQ(rank(m), naive_rank(m)) << f.name();
    }
  }
}

TEST(LinalgTest, RankOfLowRankProducts) {
  // A (r x k) * B (k x c) has rank <= k, and generic products attain it.
  std::mt19937_64 rng(12);
  const auto q = FieldSpec::rationals();
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    const Matrix a = random_matrix(rng, q, 7, k), b = random_matrix(rng, q, k, 9);
    Matrix p(q, 7, 9);
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 9; ++j) {
        for (std::size_t t = 0; t < k; ++t) p(i, j) += a(i, t) * b(t, j);
      }
    }
    EXPECT_LE(rank(p), k);
    EXPECT_EQ(rank(p), naive_rank(p));
  }
}

TEST(LinalgTest, PackedAndPlainKernelsAgreeOverGf2) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 150;
    const std::size_t wpr = (cols + 63) / 64;
    std::vector<std::uint32_t> plain(rows * cols);
    std::vector<std::uint64_t> packed(rows * wpr, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const std::uint32_t bit = (rng() % 4 == 0) ? 1 : 0;
        plain[i * cols + j] = bit;
        if (bit) packed[i * wpr + j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
    EXPECT_EQ(kernels::rank_mod_p(plain, rows, cols, 2),
              kernels::rank_gf2_packed(packed, rows, wpr));
  }
}

TEST(LinalgTest, BareissHandlesLargeEntries) {
  // Hilbert-like integer matrix: full rank, large minors.
  const std::size_t n = 8;
  std::vector<mpz_class> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class x;
      mpz_ui_pow_ui(x.get_mpz_t(), i + 2, static_cast<unsigned long>(j * 3));
      a[i * n + j] = x;
    }
  }
  EXPECT_EQ(kernels::rank_bareiss(a, n, n), n);  // Vandermonde in i+2
  for (std::size_t j = 0; j < n; ++j) a[7 * n + j] = a[1 * n + j] * 5 - a[2 * n + j];
  EXPECT_EQ(kernels::rank_bareiss(a, n, n), n - 1);
}

TEST(LinalgTest, KernelBasisIsAnnihilatedAndComplete) {
  std::mt19937_64 rng(14);
  for (const auto& f : fields()) {
    for (int trial = 0; trial < 60; ++trial) {
      const Matrix m = random_matrix(rng, f, 1 + rng() % 6, 1 + rng() % 8, 1);
      const auto ker = kernel_basis(m);
      EXPECT_EQ(ker.size(), m.cols() - naive_rank(m));
      for (const auto& x : ker) EXPECT_TRUE(is_zero_vector(multiply(m, x)));
      if (!ker.empty()) {
        EXPECT_EQ(span_dimension(ker), ker.size());
      }
    }
  }
}

TEST(LinalgTest, RrefIsCanonical) {
  std::mt19937_64 rng(15);
  for (const auto& f : fields()) {
    for (int trial = 0; trial < 40; ++trial) {
      const Matrix m = random_matrix(rng, f, 1 + rng() % 5, 1 + rng() % 7, 1);
      const Matrix r = rref(m);
      EXPECT_EQ(r.rows(), naive_rank(m));
      EXPECT_EQ(rref(r), r);
      // A random invertible change of basis leaves the RREF unchanged.
      Matrix mixed = m;
      for (std::size_t i = 0; i + 1 < m.rows(); ++i) {
        const Scalar c = testing::random_scalar(rng, f);
        for (std::size_t j = 0; j < m.cols(); ++j) mixed(i, j) += c * m(i + 1, j);
      }
      std::vector<std::size_t> order(m.rows());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
      EXPECT_EQ(rref(mixed.select_rows(order)), r) << f.name();
    }
  }
}

TEST(LinalgTest, InSpanReturnsCoefficients) {
  std::mt19937_64 rng(16);
  for (const auto& f : fields()) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng() % 6;
      const Matrix b = random_matrix(rng, f, 1 + rng() % n, n);
      const auto basis = b.row_list();
      Vector target(n, Scalar::zero(f));
      for (const auto& v : basis) {
        const Scalar c = testing::random_scalar(rng, f);
        for (std::size_t i = 0; i < n; ++i) target[i] += c * v[i];
      }
      const auto coeffs = in_span(target, basis);
      ASSERT_TRUE(coeffs.has_value());
      Vector back(n, Scalar::zero(f));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) back[i] += (*coeffs)[j] * basis[j][i];
      }
      EXPECT_EQ(back, target);
      // Adding an independent vector: in_span must agree with the rank test.
      const Vector probe = random_matrix(rng, f, 1, n).row(0);
      auto extended = basis;
      extended.push_back(probe);
      EXPECT_EQ(in_span(probe, basis).has_value(),
                span_dimension(extended) == span_dimension(basis));
    }
  }
  const auto f = FieldSpec::prime(3);
  EXPECT_THROW(in_span(Vector(3, Scalar::one(f)), {Vector(2, Scalar::one(f))}),
               InputError);
}

TEST(LinalgTest, IntersectionDimensionFormula) {
  std::mt19937_64 rng(17);
  for (const auto& f : fields()) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng() % 6;
      auto u = rref(random_matrix(rng, f, 1 + rng() % n, n, 1)).row_list();
      auto v = rref(random_matrix(rng, f, 1 + rng() % n, n, 1)).row_list();
      if (u.empty() || v.empty()) continue;
      const auto w = subspace_intersection(u, v);
      auto sum = u;
      sum.insert(sum.end(), v.begin(), v.end());
      EXPECT_EQ(w.size() + span_dimension(sum), u.size() + v.size());
      for (const auto& x : w) {
        EXPECT_TRUE(in_span(x, u).has_value());
        EXPECT_TRUE(in_span(x, v).has_value());
      }
      EXPECT_EQ(subspace_intersection(v, u), w);
    }
  }
}

TEST(LinalgTest, RowSubsetRankerMatchesDirectRank) {
  std::mt19937_64 rng(18);
  for (const auto& f : fields()) {
    const Matrix m = random_matrix(rng, f, 10, 6, 2);
    const RowSubsetRanker ranker(m);
    for (std::uint64_t mask = 0; mask < (1u << 10); mask += 7) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < 10; ++i) {
        if ((mask >> i) & 1u) rows.push_back(i);
      }
      EXPECT_EQ(ranker.rank_mask(mask), naive_rank(m.select_rows(rows)));
    }
  }
}

TEST(PackedSpanTest, InsertPopTracksRank) {
  std::mt19937_64 rng(19);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    const auto f = FieldSpec::prime(p);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng() % 70;
      PackedSpan span(p, n);
      std::vector<Vector> inserted;
      std::vector<bool> accepted;
      for (int step = 0; step < 12; ++step) {
        if (!inserted.empty() && rng() % 4 == 0) {
          if (accepted.back()) span.pop();
          inserted.pop_back();
          accepted.pop_back();
          continue;
        }
        std::vector<std::uint32_t> v(n);
        Vector sv(n, Scalar::zero(f));
        for (std::size_t i = 0; i < n; ++i) {
          v[i] = (rng() % 3 == 0) ? static_cast<std::uint32_t>(rng() % p) : 0;
          sv[i] = Scalar::residue(v[i], p);
        }
        const bool was_contained = span.contains(v);
        const bool ok = span.insert(v);
        EXPECT_EQ(ok, !was_contained);
        inserted.push_back(sv);
        accepted.push_back(ok);
        EXPECT_EQ(span.rank(), span_dimension(inserted));
      }
    }
  }
}

TEST(PackedSpanTest, BasisSpansTheInsertedRows) {
  const std::uint32_t p = 5;
  const auto f = FieldSpec::prime(p);
  PackedSpan span(p, 4);
  span.insert(std::vector<std::uint32_t>{1, 2, 3, 4});
  span.insert(std::vector<std::uint32_t>{0, 1, 1, 0});
  std::vector<Vector> basis;
  for (const auto& row : span.basis()) {
    Vector v;
    for (auto x : row) v.push_back(Scalar::residue(x, p));
    basis.push_back(v);
  }
  Vector sum;
  for (std::uint32_t x : {1u, 3u, 4u, 4u}) sum.push_back(Scalar::residue(x, p));
  EXPECT_TRUE(in_span(sum, basis).has_value());
  (void)f;
}

}  // namespace
}  // namespace segre
