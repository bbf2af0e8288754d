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

// Dependency invariants of finite point sets under the Segre embedding.
//
// Everything reduces to ranks of embed_set(S): the defect is
// e(S) = #S - rank, so a set is independent exactly when e(S) = 0.

#ifndef SEGRE_DEPENDENCE_HPP_
#define SEGRE_DEPENDENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segre/linalg.hpp"
#include "segre/multiproj.hpp"

namespace segre {

// Ordered from most to least specific; analyze() reports the first that
// applies.
enum class DependencyClass {
  kIndependent,
  kCircuit,
  kUniformlyDependent,
  kECircuit,
  kEquallyDependent,
  kDependentOther,
};

std::string to_string(DependencyClass c);

// Exponential subset checks refuse sets larger than these.
inline constexpr std::size_t kUniformCheckCap = 10;
inline constexpr std::size_t kSubsetSearchCap = 24;

std::size_t defect(const PointSet& s);
bool is_equally_dependent(const PointSet& s);
bool is_circuit(const PointSet& s);
// Throws InputError above kUniformCheckCap points.
bool is_uniformly_dependent(const PointSet& s);
// e(S) when S is an e(S)-circuit, otherwise nullopt.
std::optional<std::size_t> e_circuit_degree(const PointSet& s);

// A projective point of the Segre ambient space, kept in canonical form.
class TensorPoint {
 public:
  // Throws InputError on a zero or empty vector.
  explicit TensorPoint(Vector coords, std::string origin = "");
  static TensorPoint of(const MultiPoint& p, const MultiprojectiveSpace& y);

  const Vector& coords() const { return coords_; }
  const std::string& origin() const { return origin_; }
  std::size_t size() const { return coords_.size(); }

  friend bool operator==(const TensorPoint& a, const TensorPoint& b) {
    return a.coords_ == b.coords_;
  }

 private:
  Vector coords_;
  std::string origin_;
};

bool irredundantly_spans(const PointSet& s, const TensorPoint& q);

// Tensor rank r_Y(q), or nullopt if larger than cap (cap <= 6). Two-factor
// spaces use the matrix rank of the reshaped vector over any field; other
// spaces need a finite field and are searched exhaustively.
std::optional<std::size_t> tensor_rank(const TensorPoint& q,
                                       const MultiprojectiveSpace& y,
                                       std::size_t cap);

inline constexpr std::uint64_t kDefaultSearchBudget = 200'000'000;

// Exhaustive search only (no two-factor shortcut), for cross-checking.
std::optional<std::size_t> tensor_rank_exhaustive(
    const PointTable& table, std::span<const std::uint32_t> q, std::size_t cap,
    std::uint64_t budget = kDefaultSearchBudget);

// S(Y, q, t): every t-subset of Y(F) irredundantly spanning q, as sorted
// point-index lists in lexicographic order. Throws BudgetExceeded when the
// search would exceed `budget` candidate decodes.
std::vector<std::vector<std::size_t>> decompositions(
    const PointTable& table, std::span<const std::uint32_t> q, std::size_t t,
    std::uint64_t budget = kDefaultSearchBudget);

std::vector<PointSet> decompositions(const MultiprojectiveSpace& y,
                                     const TensorPoint& q, std::size_t t,
                                     std::uint64_t budget = kDefaultSearchBudget);

struct PartitionCandidate {
  TensorPoint q;
  std::optional<std::size_t> tensor_rank;  // nullopt if not computed
};

struct PartitionAnalysis {
  std::size_t defect_s = 0, defect_a = 0, defect_b = 0;
  // Projective dimensions; -1 encodes the empty set.
  int dim_a = -1, dim_b = -1, dim_intersection = -1;
  std::vector<Vector> intersection_basis;
  // Points of the intersection irredundantly spanned by both halves. Over a
  // finite field: all of them (if the intersection is small enough to
  // enumerate); over Q: seeded random samples.
  std::vector<PartitionCandidate> candidates;
  bool candidates_exhaustive = false;
};

// a and b are index lists into s. Requires a disjoint cover of s with
// #a = #b = 3 unless allow_any_sizes is set.
PartitionAnalysis partition_analysis(const PointSet& s,
                                     const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b,
                                     bool allow_any_sizes = false,
                                     std::uint64_t seed = 0);

struct SubsetProfileRow {
  std::size_t size = 0;
  std::map<std::size_t, std::uint64_t> defect_counts;  // defect -> #subsets
};

struct AnalysisReport {
  std::size_t size = 0;
  std::size_t rank = 0;
  std::size_t defect = 0;
  int width = 0;
  bool concise = false;
  std::vector<int> hull_dims;
  DependencyClass dependency_class = DependencyClass::kIndependent;
  bool equally_dependent = false;
  std::optional<bool> uniformly_dependent;  // absent above the size cap
  std::optional<std::size_t> e_circuit;
  // A minimal dependent subset (a circuit) for dependent-other sets.
  std::optional<PointSet> witness;
  // Present when #S <= 8.
  std::vector<SubsetProfileRow> subset_profile;
};

AnalysisReport analyze(const PointSet& s);

}  // namespace segre

#endif  // SEGRE_DEPENDENCE_HPP_
