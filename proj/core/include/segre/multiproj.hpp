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

// Multiprojective spaces Y = P^{n_1} x ... x P^{n_k}, their points, finite
// point sets, and the Segre embedding.
//
// Coordinates are canonical: the leftmost nonzero entry of every factor
// vector is 1. Point sets are sorted lexicographically on these coordinates
// and deduplicated, so two sets with the same points compare equal and
// serialize identically.

#ifndef SEGRE_MULTIPROJ_HPP_
#define SEGRE_MULTIPROJ_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "segre/field.hpp"
#include "segre/linalg.hpp"

namespace segre {

class MultiprojectiveSpace {
 public:
  // Throws InputError if dims is empty or has a negative entry.
  MultiprojectiveSpace(const FieldSpec& field, std::vector<int> dims);

  const FieldSpec& field() const { return field_; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t factors() const { return dims_.size(); }
  int dim(std::size_t i) const { return dims_.at(i); }

  // prod(n_i + 1), the length of a Segre vector.
  std::size_t segre_length() const;
  // r = segre_length() - 1.
  int segre_dimension() const { return static_cast<int>(segre_length()) - 1; }
  // Number of factors of positive dimension, w(Y).
  int width() const;
  // |Y(F)|; throws InputError over the rationals. Saturates at UINT64_MAX.
  std::uint64_t point_count() const;

  MultiprojectiveSpace without_factor(std::size_t i) const;
  MultiprojectiveSpace keep_factors(const std::vector<std::size_t>& keep) const;

  // "P^1xP^1xP^2"
  std::string shape_string() const;

  friend bool operator==(const MultiprojectiveSpace&,
                         const MultiprojectiveSpace&) = default;

 private:
  FieldSpec field_;
  std::vector<int> dims_;
};

class ProjPoint {
 public:
  // Scales coords so the first nonzero entry is 1. Throws InputError on an
  // empty or zero vector or on mixed fields.
  static ProjPoint normalized(Vector coords);
  static ProjPoint from_ints(const FieldSpec& field,
                             const std::vector<long long>& coords);
  static ProjPoint from_residues(std::span<const std::uint32_t> coords,
                                 std::uint32_t p);

  const Vector& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

  std::string to_string() const;

 private:
  explicit ProjPoint(Vector coords) : coords_(std::move(coords)) {}
  Vector coords_;
};

class MultiPoint {
 public:
  explicit MultiPoint(std::vector<ProjPoint> components)
      : components_(std::move(components)) {}

  const std::vector<ProjPoint>& components() const { return components_; }
  const ProjPoint& operator[](std::size_t i) const { return components_[i]; }
  std::size_t factors() const { return components_.size(); }

  // The point with component i replaced.
  MultiPoint with_component(std::size_t i, ProjPoint c) const;

  friend bool operator==(const MultiPoint&, const MultiPoint&) = default;
  friend std::strong_ordering operator<=>(const MultiPoint& a, const MultiPoint& b);

  std::string to_string() const;

 private:
  std::vector<ProjPoint> components_;
};

// Throws InputError unless p has one component per factor with matching
// length and field.
void validate_point(const MultiPoint& p, const MultiprojectiveSpace& y);

class PointSet {
 public:
  explicit PointSet(MultiprojectiveSpace space) : space_(std::move(space)) {}
  // Validates, sorts and deduplicates.
  PointSet(MultiprojectiveSpace space, std::vector<MultiPoint> points);

  const MultiprojectiveSpace& space() const { return space_; }
  const std::vector<MultiPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const MultiPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const MultiPoint& p) const;
  // Index of p in sorted order, if present.
  std::optional<std::size_t> find(const MultiPoint& p) const;

  PointSet subset(std::span<const std::size_t> indices) const;
  // Bit i selects points()[i]; requires size() <= 64.
  PointSet subset_mask(std::uint64_t mask) const;
  PointSet without(std::size_t index) const;
  PointSet with(const MultiPoint& p) const;
  PointSet united(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  MultiprojectiveSpace space_;
  std::vector<MultiPoint> points_;
};

// Kronecker product of the component vectors, factor 1 most significant.
Vector segre_embed(const MultiPoint& p, const MultiprojectiveSpace& y);

// Rows are segre_embed of the points in set order.
Matrix embed_set(const PointSet& s);

// pi_i(S) as a sorted set of factor points.
std::vector<ProjPoint> project_pi(const PointSet& s, std::size_t i);
// eta_i(S) in Y_i (factor i deleted). Throws InputError when k = 1.
PointSet project_eta(const PointSet& s, std::size_t i);
// pi_E(S) in Y_E, forgetting the factors listed in `forget`. Throws
// InputError when `forget` covers every factor or is out of range.
PointSet project_pi_E(const PointSet& s, const std::vector<std::size_t>& forget);

// Number of factors i with #pi_i(S) > 1. Throws InputError on an empty set.
int width(const PointSet& s);

struct ConcisionHull {
  // Per factor: RREF basis of <pi_i(S)>.
  std::vector<std::vector<Vector>> bases;
  // Per factor: dim <pi_i(S)> as a projective space.
  std::vector<int> hull_dims;
  bool concise = false;
  // S rewritten in hull coordinates; same factor count, factor i becomes
  // P^{hull_dims[i]}. Coordinates are the coefficients on `bases[i]`.
  PointSet rewritten;
  // `rewritten` with the zero-dimensional factors dropped (a single P^0 if
  // every factor is trivial).
  PointSet reduced;
  // Indices of the factors with hull_dims[i] > 0.
  std::vector<std::size_t> nontrivial_factors;
};

ConcisionHull concision_hull(const PointSet& s);

// All canonical vectors of P^n(GF(p)), in lexicographic order.
std::vector<std::vector<std::uint32_t>> projective_points(std::uint32_t p, int n);

// Scales v so its first nonzero entry is 1; returns false if v is zero.
bool normalize_residues(std::span<std::uint32_t> v, std::uint32_t p);

// All points of Y(GF(p)) with precomputed Segre vectors, indexed in PointSet
// order. Point index is the mixed-radix number of the factor point indices
// (factor 1 most significant).
class PointTable {
 public:
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 22;

  // Throws InputError over Q, BudgetExceeded above kMaxPoints points.
  explicit PointTable(const MultiprojectiveSpace& y);

  const MultiprojectiveSpace& space() const { return space_; }
  std::uint32_t modulus() const { return p_; }
  std::size_t size() const { return size_; }
  std::size_t segre_length() const { return length_; }
  std::size_t factors() const { return factor_points_.size(); }

  std::size_t factor_size(std::size_t i) const { return factor_points_[i].size(); }
  std::span<const std::uint32_t> factor_point(std::size_t i, std::size_t j) const {
    return factor_points_[i][j];
  }
  std::size_t digit(std::size_t point, std::size_t i) const {
    return digits_[point * factors() + i];
  }
  std::size_t compose(std::span<const std::size_t> digits) const;

  std::span<const std::uint32_t> segre(std::size_t point) const {
    return {segre_.data() + point * length_, length_};
  }

  MultiPoint point(std::size_t index) const;
  // Throws InputError if p is not a point of this space.
  std::size_t index_of(const MultiPoint& p) const;
  PointSet make_set(std::span<const std::size_t> indices) const;
  std::vector<std::size_t> indices_of(const PointSet& s) const;

  // Index of the factor-i point proportional to v (v need not be
  // normalized), or nullopt if v is zero.
  std::optional<std::size_t> factor_lookup(std::size_t i,
                                           std::span<const std::uint32_t> v) const;

  // If v is (a multiple of) the Segre vector of a point, its index.
  std::optional<std::size_t> decode(std::span<const std::uint32_t> v) const;

 private:
  MultiprojectiveSpace space_;
  std::uint32_t p_;
  std::size_t size_ = 1;
  std::size_t length_ = 1;
  std::vector<std::vector<std::vector<std::uint32_t>>> factor_points_;
  std::vector<std::size_t> radix_weight_;   // point index weight per factor
  std::vector<std::size_t> segre_stride_;   // Segre coordinate stride per factor
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> segre_;
  // Per factor: base-p code of a canonical vector -> factor index.
  std::vector<std::vector<std::int32_t>> code_table_;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> code_map_;
};

}  // namespace segre

#endif  // SEGRE_MULTIPROJ_HPP_
