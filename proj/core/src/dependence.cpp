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

#include <algorithm>
#include <bit>
#include <functional>
#include <random>

#include "segre/error.hpp"

namespace segre {
namespace {

std::uint64_t full_mask(std::size_t n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Ranks of subsets of one point set, addressed by bit masks.
class MaskRanker {
 public:
  explicit MaskRanker(const PointSet& s) : n_(s.size()), ranker_(embed_set(s)) {
    if (n_ > 64) throw InputError("subset analysis needs at most 64 points");
  }
  std::size_t n() const { return n_; }
  std::size_t rank(std::uint64_t mask) const { return ranker_.rank_mask(mask); }
  std::size_t defect(std::uint64_t mask) const {
    return static_cast<std::size_t>(std::popcount(mask)) - rank(mask);
  }

 private:
  std::size_t n_;
  RowSubsetRanker ranker_;
};

bool equally_dependent(const MaskRanker& r) {
  const std::uint64_t all = full_mask(r.n());
  const std::size_t rk = r.rank(all);
  if (rk == r.n()) return false;
  for (std::size_t i = 0; i < r.n(); ++i) {
    if (r.rank(all & ~(std::uint64_t{1} << i)) != rk) return false;
  }
  return true;
}

bool uniformly_dependent(const MaskRanker& r) {
  const std::size_t n = r.n();
  if (n > kUniformCheckCap) {
    throw InputError("uniform dependence check is capped at " +
                     std::to_string(kUniformCheckCap) + " points");
  }
  const std::uint64_t all = full_mask(n);
  const long long e = static_cast<long long>(r.defect(all));
  if (e == 0) return false;
  for (std::uint64_t m = 1; m < all; ++m) {
    const long long size = std::popcount(m);
    const long long expected = std::max<long long>(0, e - static_cast<long long>(n) + size);
    if (static_cast<long long>(r.defect(m)) != expected) return false;
  }
  return true;
}

// Calls f(mask) for every c-subset of {0..n-1}; stops when f returns true.
bool for_each_combination(std::size_t n, std::size_t c,
                          const std::function<bool(std::uint64_t)>& f) {
  if (c > n) return false;
  std::vector<std::size_t> idx(c);
  for (std::size_t i = 0; i < c; ++i) idx[i] = i;
  while (true) {
    std::uint64_t m = 0;
    for (std::size_t i : idx) m |= std::uint64_t{1} << i;
    if (f(m)) return true;
    std::size_t i = c;
    while (i > 0 && idx[i - 1] == n - c + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < c; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool mask_is_circuit(const MaskRanker& r, std::uint64_t m) {
  const std::size_t size = static_cast<std::size_t>(std::popcount(m));
  if (size < 3 || r.rank(m) != size - 1) return false;
  for (std::uint64_t rest = m; rest; rest &= rest - 1) {
    const std::uint64_t bit = rest & (~rest + 1);
    if (r.rank(m & ~bit) != size - 1) return false;
  }
  return true;
}

std::optional<std::size_t> e_circuit(const MaskRanker& r) {
  const std::size_t n = r.n();
  const std::uint64_t all = full_mask(n);
  const std::size_t e = r.defect(all);
  if (e == 0 || n < 3) return std::nullopt;
  if (n > kSubsetSearchCap) {
    throw InputError("e-circuit search is capped at " +
                     std::to_string(kSubsetSearchCap) + " points");
  }
  const std::size_t c = n - e + 1;
  const bool found = for_each_combination(
      n, c, [&](std::uint64_t m) { return mask_is_circuit(r, m); });
  if (!found) return std::nullopt;
  return e;
}

std::vector<Vector> rows_except(const Matrix& m, std::size_t skip) {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r != skip) out.push_back(m.row(r));
  }
  return out;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / i;
  return r > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(r + 0.5L);
}

// Rank of the mode-f unfolding of a Segre-ordered residue vector: rows are
// indexed by the factor-f coordinate.
std::size_t unfolding_rank(const MultiprojectiveSpace& y, std::span<const std::uint32_t> v,
                           std::size_t f, std::uint32_t p) {
  std::size_t stride = 1;
  for (std::size_t h = f + 1; h < y.factors(); ++h) stride *= static_cast<std::size_t>(y.dim(h)) + 1;
  const std::size_t rows = static_cast<std::size_t>(y.dim(f)) + 1;
  const std::size_t cols = v.size() / rows;
  std::vector<std::uint32_t> m(v.size());
  std::vector<std::size_t> fill(rows, 0);
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const std::size_t a = (idx / stride) % rows;
    m[a * cols + fill[a]++] = v[idx];
  }
  if (p == 2) {
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::uint64_t> bits(rows * words, 0);
    for (std::size_t a = 0; a < rows; ++a) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (m[a * cols + c]) bits[a * words + c / 64] |= std::uint64_t{1} << (c % 64);
      }
    }
    return kernels::rank_gf2_packed(std::move(bits), rows, words);
  }
  return kernels::rank_mod_p(std::move(m), rows, cols, p);
}

// Enumerates the t-subsets S of the table that span q with a nonzero
// coefficient on every point and are linearly independent (exactly the
// irredundant spanning sets). When `first_only` is set, stops at the first.
// `visit` receives sorted index lists.
void search_spanning_sets(const PointTable& table, std::span<const std::uint32_t> q,
                          std::size_t t, std::uint64_t budget, bool first_only,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (q.size() != table.segre_length()) throw InputError("tensor has the wrong length");
  if (t == 0) return;
  const std::uint32_t p = table.modulus();
  if (t == 1) {
    if (auto x = table.decode(q)) visit({*x});
    return;
  }
  double work = static_cast<double>(binomial_saturating(table.size(), t - 1));
  for (std::size_t j = 0; j + 1 < t; ++j) work *= p - 1;
  if (work > static_cast<double>(budget)) {
    throw BudgetExceeded("decomposition search needs about " +
                             std::to_string(static_cast<std::uint64_t>(work)) +
                             " candidate decodes",
                         static_cast<std::uint64_t>(work), budget);
  }
  const std::size_t len = table.segre_length();
  const MultiprojectiveSpace& y = table.space();
  PackedSpan span(p, len);
  std::vector<std::size_t> chosen;
  // residual[d] = q - sum_{j<d} c_j nu(T_j).
  std::vector<std::vector<std::uint32_t>> residual(t, std::vector<std::uint32_t>(len));
  for (std::size_t i = 0; i < len; ++i) residual[0][i] = q[i] % p;
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (stop) return;
    const std::size_t depth = chosen.size();
    const auto& r = residual[depth];
    if (depth == t - 1) {
      const auto x = table.decode(r);
      if (!x || span.contains(table.segre(*x))) return;
      if (!first_only && *x <= chosen.back()) return;
      std::vector<std::size_t> s = chosen;
      s.push_back(*x);
      if (first_only) {
        std::sort(s.begin(), s.end());
        stop = true;
      }
      visit(s);
      return;
    }
    // The residual must still have rank <= t - depth; every unfolding rank
    // bounds the tensor rank from below.
    if (t - depth >= 2 && depth > 0 && y.factors() >= 2) {
      for (std::size_t f = 0; f < y.factors(); ++f) {
        if (unfolding_rank(y, r, f, p) > t - depth) return;
      }
    }
    auto& next = residual[depth + 1];
    for (std::size_t i = start; i < table.size() && !stop; ++i) {
      if (!span.insert(table.segre(i))) continue;
      chosen.push_back(i);
      const auto seg = table.segre(i);
      for (std::uint32_t c = 1; c < p && !stop; ++c) {
        const std::uint64_t neg = p - c;
        for (std::size_t k = 0; k < len; ++k) {
          next[k] = seg[k] ? static_cast<std::uint32_t>((r[k] + neg * seg[k]) % p) : r[k];
        }
        dfs(i + 1);
      }
      chosen.pop_back();
      span.pop();
    }
  };
  dfs(0);
}

std::vector<std::uint32_t> to_residues(const Vector& v) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (const Scalar& x : v) out.push_back(x.residue_value());
  return out;
}

}  // namespace

std::string to_string(DependencyClass c) {
  switch (c) {
    case DependencyClass::kIndependent: return "independent";
    case DependencyClass::kCircuit: return "circuit";
    case DependencyClass::kUniformlyDependent: return "uniformly-dependent";
    case DependencyClass::kECircuit: return "e-circuit";
    case DependencyClass::kEquallyDependent: return "equally-dependent";
    case DependencyClass::kDependentOther: return "dependent-other";
  }
  return "unknown";
}

std::size_t defect(const PointSet& s) {
  if (s.empty()) throw InputError("defect of an empty set");
  return s.size() - rank(embed_set(s));
}

bool is_equally_dependent(const PointSet& s) {
  if (s.size() < 2) return false;
  return equally_dependent(MaskRanker(s));
}

bool is_circuit(const PointSet& s) {
  if (s.size() < 2) return false;
  const MaskRanker r(s);
  return equally_dependent(r) && r.defect(full_mask(r.n())) == 1;
}

bool is_uniformly_dependent(const PointSet& s) {
  if (s.size() > kUniformCheckCap) {
    throw InputError("uniform dependence check is capped at " +
                     std::to_string(kUniformCheckCap) + " points");
  }
  if (s.size() < 2) return false;
  return uniformly_dependent(MaskRanker(s));
}

std::optional<std::size_t> e_circuit_degree(const PointSet& s) {
  if (s.size() < 3) return std::nullopt;
  return e_circuit(MaskRanker(s));
}

TensorPoint::TensorPoint(Vector coords, std::string origin)
    : coords_(ProjPoint::normalized(std::move(coords)).coords()),
      origin_(std::move(origin)) {}

TensorPoint TensorPoint::of(const MultiPoint& p, const MultiprojectiveSpace& y) {
  return TensorPoint(segre_embed(p, y), "segre image of " + p.to_string());
}

bool irredundantly_spans(const PointSet& s, const TensorPoint& q) {
  if (q.size() != s.space().segre_length()) {
    throw InputError("tensor length does not match the Segre ambient space");
  }
  if (s.empty()) return false;
  if (q.coords().front().field() != s.space().field()) {
    throw InputError("tensor and set live over different fields");
  }
  const Matrix m = embed_set(s);
  if (!in_span(q.coords(), m.row_list())) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto rest = rows_except(m, i);
    if (!rest.empty() && in_span(q.coords(), rest)) return false;
  }
  return true;
}

std::optional<std::size_t> tensor_rank(const TensorPoint& q,
                                       const MultiprojectiveSpace& y,
                                       std::size_t cap) {
  if (cap == 0 || cap > 6) throw InputError("tensor rank cap must be in [1, 6]");
  if (q.size() != y.segre_length()) {
    throw InputError("tensor length does not match the Segre ambient space");
  }
  std::size_t r = 0;
  if (y.factors() == 1) {
    r = 1;
  } else if (y.factors() == 2) {
    const std::size_t rows = static_cast<std::size_t>(y.dim(0)) + 1;
    const std::size_t cols = static_cast<std::size_t>(y.dim(1)) + 1;
    Matrix m(y.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = q.coords()[i * cols + j];
    }
    r = rank(m);
  } else {
    if (!y.field().is_finite()) {
      throw InputError("tensor rank over Q is only available for k <= 2");
    }
    const PointTable table(y);
    return tensor_rank_exhaustive(table, to_residues(q.coords()), cap);
  }
  if (r > cap) return std::nullopt;
  return r;
}

std::optional<std::size_t> tensor_rank_exhaustive(const PointTable& table,
                                                  std::span<const std::uint32_t> q,
                                                  std::size_t cap,
                                                  std::uint64_t budget) {
  if (cap == 0 || cap > 6) throw InputError("tensor rank cap must be in [1, 6]");
  if (std::all_of(q.begin(), q.end(), [&](std::uint32_t x) { return x % table.modulus() == 0; })) {
    throw InputError("zero tensor");
  }
  for (std::size_t t = 1; t <= cap; ++t) {
    bool found = false;
    search_spanning_sets(table, q, t, budget, true,
                         [&](const std::vector<std::size_t>&) { found = true; });
    if (found) return t;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> decompositions(const PointTable& table,
                                                     std::span<const std::uint32_t> q,
                                                     std::size_t t,
                                                     std::uint64_t budget) {
  std::vector<std::vector<std::size_t>> out;
  search_spanning_sets(table, q, t, budget, false,
                       [&](const std::vector<std::size_t>& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointSet> decompositions(const MultiprojectiveSpace& y,
                                     const TensorPoint& q, std::size_t t,
                                     std::uint64_t budget) {
  if (!y.field().is_finite()) throw InputError("decompositions need a finite field");
  const PointTable table(y);
  std::vector<PointSet> out;
  for (const auto& idx : decompositions(table, to_residues(q.coords()), t, budget)) {
    out.push_back(table.make_set(idx));
  }
  return out;
}

PartitionAnalysis partition_analysis(const PointSet& s, const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b,
                                     bool allow_any_sizes, std::uint64_t seed) {
  std::vector<bool> seen(s.size(), false);
  for (const auto* part : {&a, &b}) {
    for (std::size_t i : *part) {
      if (i >= s.size()) throw InputError("partition index out of range");
      if (seen[i]) throw InputError("partition halves overlap");
      seen[i] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("partition does not cover the set");
  }
  if (!allow_any_sizes && (a.size() != 3 || b.size() != 3)) {
    throw InputError("partition halves must have 3 points each");
  }
  if (a.empty() || b.empty()) throw InputError("partition halves must be nonempty");
  const PointSet sa = s.subset(a), sb = s.subset(b);
  const auto& y = s.space();
  PartitionAnalysis out;
  out.defect_s = defect(s);
  out.defect_a = defect(sa);
  out.defect_b = defect(sb);
  const auto ua = rref(embed_set(sa)).row_list();
  const auto ub = rref(embed_set(sb)).row_list();
  out.dim_a = static_cast<int>(ua.size()) - 1;
  out.dim_b = static_cast<int>(ub.size()) - 1;
  out.intersection_basis = subspace_intersection(ua, ub);
  out.dim_intersection = static_cast<int>(out.intersection_basis.size()) - 1;
  if (out.intersection_basis.empty()) {
    out.candidates_exhaustive = true;
    return out;
  }
  const std::size_t d = out.intersection_basis.size();
  const std::size_t len = y.segre_length();
  const std::size_t cap = std::min<std::size_t>(6, std::max(a.size(), b.size()));
  std::optional<PointTable> table;
  if (y.field().is_finite() && y.factors() > 2 && y.point_count() <= 50'000) {
    table.emplace(y);
  }
  auto rank_of = [&](const TensorPoint& q) -> std::optional<std::size_t> {
    if (y.factors() <= 2) return tensor_rank(q, y, cap);
    if (!table) return std::nullopt;
    try {
      return tensor_rank_exhaustive(*table, to_residues(q.coords()), cap, 20'000'000);
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  };
  auto combine = [&](const std::vector<Scalar>& c) {
    Vector v(len, Scalar::zero(y.field()));
    for (std::size_t j = 0; j < d; ++j) {
      if (c[j].is_zero()) continue;
      for (std::size_t i = 0; i < len; ++i) v[i] += c[j] * out.intersection_basis[j][i];
    }
    return v;
  };
  if (y.field().is_finite() &&
      projective_point_count(y.field().modulus(), static_cast<int>(d) - 1) <= 100'000) {
    out.candidates_exhaustive = true;
    for (const auto& c : projective_points(y.field().modulus(), static_cast<int>(d) - 1)) {
      std::vector<Scalar> cs;
      for (auto x : c) cs.push_back(Scalar::residue(x, y.field().modulus()));
      TensorPoint q(combine(cs), "partition intersection");
      if (irredundantly_spans(sa, q) && irredundantly_spans(sb, q)) {
        const auto r = rank_of(q);
        out.candidates.push_back({std::move(q), r});
      }
    }
    return out;
  }
  // Surrogate for a general point: random coefficients, rejected until the
  // point is irredundantly spanned by both halves.
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 256 && out.candidates.size() < 3; ++attempt) {
    std::vector<Scalar> cs;
    for (std::size_t j = 0; j < d; ++j) {
      const long long num = static_cast<long long>(rng() % 21) - 10;
      cs.push_back(Scalar::from_int(y.field(), num));
    }
    if (std::all_of(cs.begin(), cs.end(), [](const Scalar& x) { return x.is_zero(); })) {
      continue;
    }
    TensorPoint q(combine(cs), "partition intersection (sampled)");
    if (std::any_of(out.candidates.begin(), out.candidates.end(),
                    [&](const PartitionCandidate& c) { return c.q == q; })) {
      continue;
    }
    if (irredundantly_spans(sa, q) && irredundantly_spans(sb, q)) {
      const auto r = rank_of(q);
      out.candidates.push_back({std::move(q), r});
    }
  }
  return out;
}

AnalysisReport analyze(const PointSet& s) {
  if (s.empty()) throw InputError("cannot analyze an empty set");
  if (s.size() > 64) throw InputError("analyze supports at most 64 points");
  const MaskRanker r(s);
  const std::uint64_t all = full_mask(s.size());
  AnalysisReport rep;
  rep.size = s.size();
  rep.rank = r.rank(all);
  rep.defect = s.size() - rep.rank;
  rep.width = width(s);
  const auto hull = concision_hull(s);
  rep.concise = hull.concise;
  rep.hull_dims = hull.hull_dims;
  rep.equally_dependent = s.size() >= 2 && equally_dependent(r);
  if (s.size() >= 2 && s.size() <= kUniformCheckCap) {
    rep.uniformly_dependent = uniformly_dependent(r);
  } else if (s.size() < 2) {
    rep.uniformly_dependent = false;
  }
  if (s.size() <= kSubsetSearchCap) rep.e_circuit = e_circuit(r);
  if (rep.defect == 0) {
    rep.dependency_class = DependencyClass::kIndependent;
  } else if (rep.equally_dependent && rep.defect == 1) {
    rep.dependency_class = DependencyClass::kCircuit;
  } else if (rep.uniformly_dependent.value_or(false)) {
    rep.dependency_class = DependencyClass::kUniformlyDependent;
  } else if (rep.e_circuit) {
    rep.dependency_class = DependencyClass::kECircuit;
  } else if (rep.equally_dependent) {
    rep.dependency_class = DependencyClass::kEquallyDependent;
  } else {
    rep.dependency_class = DependencyClass::kDependentOther;
    // Greedy minimalization: drop points while the rest stays dependent.
    std::uint64_t m = all;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::uint64_t smaller = m & ~(std::uint64_t{1} << i);
      if (r.defect(smaller) > 0) m = smaller;
    }
    rep.witness = s.subset_mask(m);
  }
  if (s.size() <= 8) {
    rep.subset_profile.resize(s.size() + 1);
    for (std::size_t k = 0; k <= s.size(); ++k) rep.subset_profile[k].size = k;
    for (std::uint64_t m = 1; m <= all; ++m) {
      rep.subset_profile[static_cast<std::size_t>(std::popcount(m))]
          .defect_counts[r.defect(m)]++;
    }
    rep.subset_profile.erase(rep.subset_profile.begin());
  }
  return rep;
}

}  // namespace segre
