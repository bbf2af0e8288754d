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

#include "segre/dependence.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "segre/error.hpp"
#include "test_support.hpp"

namespace segre {
namespace {

using testing::literal_circuit;
using testing::literal_equally_dependent;
using testing::literal_uniformly_dependent;
using testing::naive_defect;
using testing::naive_rank;

MultiPoint mp(const FieldSpec& f, std::vector<std::vector<long long>> comps) {
  std::vector<ProjPoint> c;
  for (auto& v : comps) c.push_back(ProjPoint::from_ints(f, v));
  return MultiPoint(std::move(c));
}

// Four points of Y = P^1: e = 2; three collinear points in P^2: circuit.
TEST(DependenceTest, SmallExamples) {
  const auto f = FieldSpec::prime(5);
  const MultiprojectiveSpace p1(f, {1});
  const PointSet three(p1, {mp(f, {{1, 0}}), mp(f, {{0, 1}}), mp(f, {{1, 1}})});
  EXPECT_EQ(defect(three), 1u);
  EXPECT_TRUE(is_circuit(three));
  const PointSet four = three.with(mp(f, {{1, 2}}));
  EXPECT_EQ(defect(four), 2u);
  EXPECT_TRUE(is_equally_dependent(four));
  EXPECT_TRUE(is_uniformly_dependent(four));
  EXPECT_EQ(analyze(four).dependency_class, DependencyClass::kUniformlyDependent);
  EXPECT_EQ(defect(PointSet(p1, {mp(f, {{1, 0}})})), 0u);
  EXPECT_EQ(defect(PointSet(p1, {mp(f, {{1, 0}}), mp(f, {{1, 3}})})), 0u);
  EXPECT_THROW(defect(PointSet(p1)), InputError);

  const MultiprojectiveSpace p2(f, {2});
  const PointSet line(p2, {mp(f, {{1, 0, 0}}), mp(f, {{0, 1, 0}}), mp(f, {{1, 1, 0}})});
  EXPECT_EQ(analyze(line).dependency_class, DependencyClass::kCircuit);
  // Adding a point off the line: dependent but not equally dependent; the
  // witness is the collinear triple.
  const PointSet extra = line.with(mp(f, {{0, 0, 1}}));
  const auto rep = analyze(extra);
  EXPECT_EQ(rep.dependency_class, DependencyClass::kDependentOther);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(*rep.witness, line);
  const PointSet indep(p2, {mp(f, {{1, 0, 0}}), mp(f, {{0, 1, 0}})});
  EXPECT_EQ(analyze(indep).dependency_class, DependencyClass::kIndependent);
  EXPECT_FALSE(e_circuit_degree(indep).has_value());
}

TEST(DependenceTest, PredicatesMatchLiteralDefinitions) {
  std::mt19937_64 rng(31);
  const std::vector<MultiprojectiveSpace> spaces = {
      MultiprojectiveSpace(FieldSpec::prime(2), {1, 1}),
      MultiprojectiveSpace(FieldSpec::prime(3), {1, 1}),
      MultiprojectiveSpace(FieldSpec::prime(2), {2}),
      MultiprojectiveSpace(FieldSpec::prime(3), {1}),
      MultiprojectiveSpace(FieldSpec::prime(2), {1, 1, 1}),
      MultiprojectiveSpace(FieldSpec::rationals(), {1, 1}),
  };
  int dependent_seen = 0, equal_seen = 0, uniform_seen = 0;
  for (const auto& y : spaces) {
    for (int trial = 0; trial < 80; ++trial) {
      const PointSet s = testing::random_set(rng, y, 2 + rng() % 6);
      if (s.size() < 2) continue;
      const std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
      const std::size_t e = naive_defect(s, all);
      EXPECT_EQ(defect(s), e);
      const bool eq = literal_equally_dependent(s);
      const bool un = literal_uniformly_dependent(s);
      EXPECT_EQ(is_equally_dependent(s), eq);
      EXPECT_EQ(is_uniformly_dependent(s), un);
      EXPECT_EQ(is_circuit(s), literal_circuit(s));
      // e-circuit: some circuit of size #S - e + 1.
      bool ec = false;
      if (e > 0 && s.size() >= 3) {
        for (std::uint64_t m = 1; m <= all; ++m) {
          if (static_cast<std::size_t>(__builtin_popcountll(m)) != s.size() - e + 1) continue;
          std::vector<std::size_t> idx;
          for (std::size_t i = 0; i < s.size(); ++i) {
            if ((m >> i) & 1u) idx.push_back(i);
          }
          if (literal_circuit(s.subset(idx))) ec = true;
        }
      }
      EXPECT_EQ(e_circuit_degree(s).has_value(), ec);
      if (ec) {
        EXPECT_EQ(*e_circuit_degree(s), e);
      }
      // Implications between the classes.
      if (un) {
        EXPECT_TRUE(eq);
        EXPECT_TRUE(ec);
      }
      if (ec) {
        EXPECT_TRUE(eq);
      }
      if (eq) {
        EXPECT_GT(e, 0u);
      }
      dependent_seen += e > 0;
      equal_seen += eq;
      uniform_seen += un;
    }
  }
  EXPECT_GT(dependent_seen, 50);
  EXPECT_GT(equal_seen, 10);
  EXPECT_GT(uniform_seen, 5);
}

TEST(DependenceTest, DefectIsMonotone) {
  std::mt19937_64 rng(32);
  for (std::uint32_t p : {2u, 3u}) {
    const MultiprojectiveSpace y(FieldSpec::prime(p), {1, 2});
    for (int trial = 0; trial < 200; ++trial) {
      const PointSet s = testing::random_set(rng, y, 1 + rng() % 7);
      const MultiPoint x = testing::random_point(rng, y);
      if (s.contains(x)) continue;
      const std::size_t before = defect(s), after = defect(s.with(x));
      EXPECT_TRUE(after == before || after == before + 1);
    }
  }
}

TEST(DependenceTest, UniformCheckIsCapped) {
  std::mt19937_64 rng(33);
  const MultiprojectiveSpace y(FieldSpec::prime(5), {1, 1});
  PointSet s = testing::random_set(rng, y, 14);
  while (s.size() <= kUniformCheckCap) s = s.with(testing::random_point(rng, y));
  EXPECT_THROW(is_uniformly_dependent(s), InputError);
}

TEST(DependenceTest, IrredundantSpanningMatchesAllSubsets) {
  std::mt19937_64 rng(34);
  const auto f = FieldSpec::prime(3);
  const MultiprojectiveSpace y(f, {1, 1, 1});
  const PointTable table(y);
  for (int trial = 0; trial < 200; ++trial) {
    const PointSet s = testing::random_set(rng, y, 1 + rng() % 4);
    Vector q(y.segre_length(), Scalar::zero(f));
    for (const auto& p : s) {
      const Vector v = segre_embed(p, y);
      const Scalar c = Scalar::from_int(f, static_cast<long long>(rng() % 3));
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += c * v[i];
    }
    if (std::all_of(q.begin(), q.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
    const TensorPoint tq(q);
    // Oracle: q in the span of S and of no proper subset, by rank.
    auto spans = [&](std::uint64_t m) {
      std::vector<Vector> rows;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if ((m >> i) & 1u) rows.push_back(segre_embed(s[i], y));
      }
      const std::size_t r = rows.empty() ? 0 : naive_rank(Matrix::from_rows(f, q.size(), rows));
      rows.push_back(tq.coords());
      return naive_rank(Matrix::from_rows(f, q.size(), rows)) == r;
    };
    const std::uint64_t all = (std::uint64_t{1} << s.size()) - 1;
    bool oracle = spans(all);
    for (std::uint64_t m = 0; m < all && oracle; ++m) oracle = !spans(m);
    EXPECT_EQ(irredundantly_spans(s, tq), oracle);
  }
  // q = nu(p): {p} spans irredundantly, {p, p'} does not.
  const MultiPoint p = table.point(5), p2 = table.point(9);
  const TensorPoint q = TensorPoint::of(p, y);
  EXPECT_TRUE(irredundantly_spans(PointSet(y, {p}), q));
  EXPECT_FALSE(irredundantly_spans(PointSet(y, {p, p2}), q));
}

// Oracle for tensor rank: smallest t such that some t-subset spans q,
// by naive rank over all subsets.
std::optional<std::size_t> brute_rank(const PointTable& t, const Vector& q, std::size_t cap) {
  const FieldSpec f = t.space().field();
  const std::size_t n = t.size();
  std::vector<Vector> segre;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v;
    for (auto x : t.segre(i)) v.push_back(Scalar::residue(x, f.modulus()));
    segre.push_back(v);
  }
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
    if (left == 0) {
      std::vector<Vector> rows;
      for (auto i : idx) rows.push_back(segre[i]);
      const std::size_t r = naive_rank(Matrix::from_rows(f, q.size(), rows));
      rows.push_back(q);
      return naive_rank(Matrix::from_rows(f, q.size(), rows)) == r;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      if (rec(i + 1, left - 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (std::size_t r = 1; r <= cap; ++r) {
    idx.clear();
    if (rec(0, r)) return r;
  }
  return std::nullopt;
}

TEST(TensorRankTest, TwoFactorShortcutMatchesExhaustiveSearch) {
  for (std::uint32_t p : {2u, 3u}) {
    for (std::vector<int> dims : {std::vector<int>{1, 1}, std::vector<int>{1, 2}}) {
      const MultiprojectiveSpace y(FieldSpec::prime(p), dims);
      const PointTable table(y);
      for (const auto& v : projective_points(p, y.segre_dimension())) {
        Vector q;
        for (auto x : v) q.push_back(Scalar::residue(x, p));
        EXPECT_EQ(tensor_rank(TensorPoint(q), y, 3), tensor_rank_exhaustive(table, v, 3));
      }
    }
  }
}

TEST(TensorRankTest, ExhaustiveMatchesBruteForceOnThreeFactors) {
  const MultiprojectiveSpace y(FieldSpec::prime(2), {1, 1, 1});
  const PointTable table(y);
  std::map<std::size_t, int> histogram;
  for (const auto& v : projective_points(2, 7)) {
    Vector q;
    for (auto x : v) q.push_back(Scalar::residue(x, 2));
    const auto r = tensor_rank(TensorPoint(q), y, 4);
    EXPECT_EQ(r, brute_rank(table, q, 4));
    ASSERT_TRUE(r.has_value());
    histogram[*r]++;
  }
  // 27 rank-one points; every 2x2x2 tensor over GF(2) has rank <= 3.
  EXPECT_EQ(histogram[1], 27);
  EXPECT_EQ(histogram.count(4), 0u);
}

TEST(TensorRankTest, Examples) {
  const auto f = FieldSpec::prime(5);
  const MultiprojectiveSpace y(f, {1, 1});
  // Identity matrix: rank 2.
  Vector id{Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};
  EXPECT_EQ(tensor_rank(TensorPoint(id), y, 3), 2u);
  const MultiPoint p = mp(f, {{1, 2}, {1, 3}});
  EXPECT_EQ(tensor_rank(TensorPoint::of(p, y), y, 3), 1u);
  EXPECT_THROW(tensor_rank(TensorPoint(id), y, 7), InputError);
  const MultiprojectiveSpace q3(FieldSpec::rationals(), {1, 1, 1});
  EXPECT_THROW(tensor_rank(TensorPoint(Vector(8, Scalar::one(FieldSpec::rationals()))), q3, 3),
               InputError);
}

// Oracle for S(Y, q, t): literal irredundant-spanning check on every
// t-subset.
TEST(DecompositionTest, MatchesBruteForce) {
  std::mt19937_64 rng(35);
  for (auto [p, dims] : {std::pair{3u, std::vector<int>{1, 1}},
                         std::pair{2u, std::vector<int>{1, 1, 1}},
                         std::pair{2u, std::vector<int>{2, 1}}}) {
    const MultiprojectiveSpace y(FieldSpec::prime(p), dims);
    const PointTable table(y);
    const auto all = projective_points(p, y.segre_dimension());
    for (int trial = 0; trial < 6; ++trial) {
      const auto& v = all[rng() % all.size()];
      Vector q;
      for (auto x : v) q.push_back(Scalar::residue(x, p));
      const TensorPoint tq(q);
      for (std::size_t t = 1; t <= 3; ++t) {
        std::vector<std::vector<std::size_t>> oracle;
        std::vector<std::size_t> idx;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
          if (idx.size() == t) {
            if (irredundantly_spans(table.make_set(idx), tq)) oracle.push_back(idx);
            return;
          }
          for (std::size_t i = start; i < table.size(); ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
          }
        };
        rec(0);
        EXPECT_EQ(decompositions(table, v, t), oracle) << y.shape_string() << " t=" << t;
      }
    }
  }
}

TEST(DecompositionTest, RankTwoDecompositionsAreConcise) {
  const auto f = FieldSpec::prime(2);
  const MultiprojectiveSpace y(f, {1, 1});
  Vector id{Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)};
  const auto sets = decompositions(y, TensorPoint(id), 2);
  EXPECT_FALSE(sets.empty());
  for (const auto& s : sets) EXPECT_TRUE(concision_hull(s).concise);
}

TEST(DecompositionTest, BudgetIsEnforced) {
  const MultiprojectiveSpace y(FieldSpec::prime(3), {1, 1, 1});
  const PointTable table(y);
  std::vector<std::uint32_t> q(8, 1);
  EXPECT_THROW(decompositions(table, q, 4, 1000), BudgetExceeded);
}

TEST(PartitionTest, GrassmannAndCandidates) {
  std::mt19937_64 rng(36);
  for (const auto& f : {FieldSpec::prime(3), FieldSpec::rationals()}) {
    const MultiprojectiveSpace y(f, {1, 1});
    for (int trial = 0; trial < 30; ++trial) {
      const PointSet s = testing::random_set(rng, y, 6);
      if (s.size() != 6) continue;
      const auto pa = partition_analysis(s, {0, 2, 4}, {1, 3, 5}, false, 7);
      EXPECT_EQ(pa.dim_intersection,
                static_cast<int>(pa.defect_s) - static_cast<int>(pa.defect_a) -
                    static_cast<int>(pa.defect_b) - 1);
      for (const auto& c : pa.candidates) {
        EXPECT_TRUE(irredundantly_spans(s.subset(std::vector<std::size_t>{0, 2, 4}), c.q));
        ASSERT_TRUE(c.tensor_rank.has_value());
        EXPECT_LE(*c.tensor_rank, 3u);
      }
    }
  }
  const auto f = FieldSpec::prime(3);
  const MultiprojectiveSpace y(f, {1, 1});
  PointSet s = testing::random_set(rng, y, 6);
  while (s.size() < 6) s = s.with(testing::random_point(rng, y));
  EXPECT_THROW(partition_analysis(s, {0, 1, 2}, {2, 3, 4}), InputError);
  EXPECT_THROW(partition_analysis(s, {0, 1}, {2, 3, 4, 5}), InputError);
  EXPECT_NO_THROW(partition_analysis(s, {0, 1}, {2, 3, 4, 5}, true));
}

TEST(AnalyzeTest, SubsetProfileCountsEverySubset) {
  std::mt19937_64 rng(37);
  const MultiprojectiveSpace y(FieldSpec::prime(2), {1, 1});
  const PointSet s = testing::random_set(rng, y, 7);
  const auto rep = analyze(s);
  ASSERT_EQ(rep.subset_profile.size(), s.size());
  for (const auto& row : rep.subset_profile) {
    std::uint64_t total = 0;
    for (auto [e, c] : row.defect_counts) total += c;
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i < row.size; ++i) binom = binom * (s.size() - i) / (i + 1);
    EXPECT_EQ(total, binom);
  }
  EXPECT_EQ(rep.subset_profile.back().defect_counts.begin()->first, rep.defect);
}

}  // namespace
}  // namespace segre
