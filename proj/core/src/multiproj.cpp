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

#include "segre/multiproj.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "segre/error.hpp"

namespace segre {

MultiprojectiveSpace::MultiprojectiveSpace(const FieldSpec& field,
                                           std::vector<int> dims)
    : field_(field), dims_(std::move(dims)) {
  if (dims_.empty()) throw InputError("a multiprojective space needs a factor");
  for (int n : dims_) {
    if (n < 0) throw InputError("factor dimensions must be >= 0");
  }
  // Keep Segre vectors addressable.
  std::size_t len = 1;
  for (int n : dims_) {
    if (len > (std::size_t{1} << 24) / static_cast<std::size_t>(n + 1)) {
      throw InputError("Segre ambient space too large");
    }
    len *= static_cast<std::size_t>(n + 1);
  }
}

std::size_t MultiprojectiveSpace::segre_length() const {
  std::size_t len = 1;
  for (int n : dims_) len *= static_cast<std::size_t>(n + 1);
  return len;
}

int MultiprojectiveSpace::width() const {
  return static_cast<int>(std::count_if(dims_.begin(), dims_.end(),
                                        [](int n) { return n > 0; }));
}

std::uint64_t MultiprojectiveSpace::point_count() const {
  if (!field_.is_finite()) throw InputError("Y(Q) is infinite");
  std::uint64_t total = 1;
  for (int n : dims_) {
    const std::uint64_t c = projective_point_count(field_.modulus(), n);
    if (total > std::numeric_limits<std::uint64_t>::max() / c) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= c;
  }
  return total;
}

MultiprojectiveSpace MultiprojectiveSpace::without_factor(std::size_t i) const {
  if (i >= dims_.size()) throw InputError("factor index out of range");
  if (dims_.size() == 1) throw InputError("cannot delete the only factor");
  std::vector<int> d = dims_;
  d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
  return MultiprojectiveSpace(field_, std::move(d));
}

MultiprojectiveSpace MultiprojectiveSpace::keep_factors(
    const std::vector<std::size_t>& keep) const {
  std::vector<int> d;
  for (std::size_t i : keep) d.push_back(dims_.at(i));
  return MultiprojectiveSpace(field_, std::move(d));
}

std::string MultiprojectiveSpace::shape_string() const {
  std::string s;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += "x";
    s += "P^" + std::to_string(dims_[i]);
  }
  return s;
}

ProjPoint ProjPoint::normalized(Vector coords) {
  if (coords.empty()) throw InputError("empty coordinate vector");
  const FieldSpec f = coords.front().field();
  for (const auto& c : coords) {
    if (c.field() != f) throw InputError("coordinates from mixed fields");
  }
  auto lead = std::find_if(coords.begin(), coords.end(),
                           [](const Scalar& c) { return !c.is_zero(); });
  if (lead == coords.end()) throw InputError("zero vector is not a projective point");
  if (!lead->is_one()) {
    const Scalar inv = lead->inverse();
    for (auto it = lead; it != coords.end(); ++it) *it *= inv;
  }
  return ProjPoint(std::move(coords));
}

ProjPoint ProjPoint::from_ints(const FieldSpec& field,
                               const std::vector<long long>& coords) {
  Vector v;
  v.reserve(coords.size());
  for (long long c : coords) v.push_back(Scalar::from_int(field, c));
  return normalized(std::move(v));
}

ProjPoint ProjPoint::from_residues(std::span<const std::uint32_t> coords,
                                   std::uint32_t p) {
  Vector v;
  v.reserve(coords.size());
  for (std::uint32_t c : coords) v.push_back(Scalar::residue(c, p));
  return normalized(std::move(v));
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(),
                                                b.coords_.begin(), b.coords_.end());
}

std::string ProjPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].to_string();
  }
  return s + ")";
}

MultiPoint MultiPoint::with_component(std::size_t i, ProjPoint c) const {
  MultiPoint out = *this;
  out.components_.at(i) = std::move(c);
  return out;
}

std::strong_ordering operator<=>(const MultiPoint& a, const MultiPoint& b) {
  return std::lexicographical_compare_three_way(
      a.components_.begin(), a.components_.end(), b.components_.begin(),
      b.components_.end());
}

std::string MultiPoint::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += "x";
    s += components_[i].to_string();
  }
  return s;
}

void validate_point(const MultiPoint& p, const MultiprojectiveSpace& y) {
  if (p.factors() != y.factors()) {
    throw InputError("point " + p.to_string() + " has " +
                     std::to_string(p.factors()) + " components, space has " +
                     std::to_string(y.factors()));
  }
  for (std::size_t i = 0; i < p.factors(); ++i) {
    if (p[i].dim() != y.dim(i)) {
      throw InputError("component " + std::to_string(i + 1) + " of " +
                       p.to_string() + " does not lie in P^" +
                       std::to_string(y.dim(i)));
    }
    if (p[i][0].field() != y.field()) {
      throw InputError("point " + p.to_string() + " is not over " + y.field().name());
    }
  }
}

PointSet::PointSet(MultiprojectiveSpace space, std::vector<MultiPoint> points)
    : space_(std::move(space)), points_(std::move(points)) {
  for (const auto& p : points_) validate_point(p, space_);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(const MultiPoint& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::optional<std::size_t> PointSet::find(const MultiPoint& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<MultiPoint> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) pts.push_back(points_.at(i));
  return PointSet(space_, std::move(pts));
}

PointSet PointSet::subset_mask(std::uint64_t mask) const {
  if (points_.size() > 64) throw InputError("subset_mask needs at most 64 points");
  std::vector<MultiPoint> pts;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if ((mask >> i) & 1u) pts.push_back(points_[i]);
  }
  return PointSet(space_, std::move(pts));
}

PointSet PointSet::without(std::size_t index) const {
  std::vector<MultiPoint> pts = points_;
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(index));
  PointSet out(space_);
  out.points_ = std::move(pts);  // already sorted and unique
  return out;
}

PointSet PointSet::with(const MultiPoint& p) const {
  std::vector<MultiPoint> pts = points_;
  pts.push_back(p);
  return PointSet(space_, std::move(pts));
}

PointSet PointSet::united(const PointSet& other) const {
  if (other.space_ != space_) throw InputError("union of sets in different spaces");
  std::vector<MultiPoint> pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  return PointSet(space_, std::move(pts));
}

Vector segre_embed(const MultiPoint& p, const MultiprojectiveSpace& y) {
  validate_point(p, y);
  Vector out{Scalar::one(y.field())};
  for (std::size_t i = 0; i < p.factors(); ++i) {
    const Vector& c = p[i].coords();
    Vector next;
    next.reserve(out.size() * c.size());
    for (const Scalar& a : out) {
      for (const Scalar& b : c) next.push_back(a * b);
    }
    out = std::move(next);
  }
  return out;
}

Matrix embed_set(const PointSet& s) {
  const auto& y = s.space();
  Matrix m(y.field(), s.size(), y.segre_length());
  for (std::size_t r = 0; r < s.size(); ++r) {
    const Vector v = segre_embed(s[r], y);
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[c];
  }
  return m;
}

std::vector<ProjPoint> project_pi(const PointSet& s, std::size_t i) {
  if (i >= s.space().factors()) throw InputError("factor index out of range");
  std::set<ProjPoint> image;
  for (const auto& p : s) image.insert(p[i]);
  return {image.begin(), image.end()};
}

PointSet project_eta(const PointSet& s, std::size_t i) {
  return project_pi_E(s, {i});
}

PointSet project_pi_E(const PointSet& s, const std::vector<std::size_t>& forget) {
  const std::size_t k = s.space().factors();
  std::vector<bool> drop(k, false);
  for (std::size_t i : forget) {
    if (i >= k) throw InputError("factor index out of range");
    drop[i] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i) {
    if (!drop[i]) keep.push_back(i);
  }
  if (keep.empty()) throw InputError("projection would forget every factor");
  std::vector<MultiPoint> pts;
  pts.reserve(s.size());
  for (const auto& p : s) {
    std::vector<ProjPoint> comps;
    for (std::size_t i : keep) comps.push_back(p[i]);
    pts.emplace_back(std::move(comps));
  }
  return PointSet(s.space().keep_factors(keep), std::move(pts));
}

int width(const PointSet& s) {
  if (s.empty()) throw InputError("width of an empty set");
  int w = 0;
  for (std::size_t i = 0; i < s.space().factors(); ++i) {
    const ProjPoint& first = s[0][i];
    for (const auto& p : s) {
      if (p[i] != first) {
        ++w;
        break;
      }
    }
  }
  return w;
}

ConcisionHull concision_hull(const PointSet& s) {
  if (s.empty()) throw InputError("concision hull of an empty set");
  const auto& y = s.space();
  const std::size_t k = y.factors();
  std::vector<std::vector<Vector>> bases(k);
  std::vector<int> dims(k);
  std::vector<std::vector<std::size_t>> pivots(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Vector> rows;
    for (const ProjPoint& c : project_pi(s, i)) rows.push_back(c.coords());
    const Matrix r = rref(Matrix::from_rows(y.field(), rows.front().size(), rows));
    bases[i] = r.row_list();
    dims[i] = static_cast<int>(bases[i].size()) - 1;
    for (const Vector& b : bases[i]) {
      std::size_t c = 0;
      while (b[c].is_zero()) ++c;
      pivots[i].push_back(c);
    }
  }
  // In an RREF basis the coefficient on row j is the entry at pivot j.
  std::vector<MultiPoint> rewritten;
  for (const auto& p : s) {
    std::vector<ProjPoint> comps;
    for (std::size_t i = 0; i < k; ++i) {
      Vector coeffs;
      for (std::size_t c : pivots[i]) coeffs.push_back(p[i][c]);
      comps.push_back(ProjPoint::normalized(std::move(coeffs)));
    }
    rewritten.emplace_back(std::move(comps));
  }
  std::vector<std::size_t> nontrivial;
  for (std::size_t i = 0; i < k; ++i) {
    if (dims[i] > 0) nontrivial.push_back(i);
  }
  PointSet rw(MultiprojectiveSpace(y.field(), dims), std::move(rewritten));
  PointSet reduced = nontrivial.empty()
                         ? project_pi_E(rw, [&] {
                             std::vector<std::size_t> f;
                             for (std::size_t i = 1; i < k; ++i) f.push_back(i);
                             return f;
                           }())
                         : [&] {
                             std::vector<std::size_t> f;
                             for (std::size_t i = 0; i < k; ++i) {
                               if (dims[i] == 0) f.push_back(i);
                             }
                             return f.empty() ? rw : project_pi_E(rw, f);
                           }();
  const bool concise = dims == y.dims();
  return ConcisionHull{std::move(bases), std::move(dims), concise, std::move(rw),
                       std::move(reduced), std::move(nontrivial)};
}

std::vector<std::vector<std::uint32_t>> projective_points(std::uint32_t p, int n) {
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<std::uint32_t>> out;
  // Leading 1 at position `lead`; more leading zeros sort first. The free
  // tail after the leading 1 counts up in base p.
  for (std::size_t lead = len; lead-- > 0;) {
    std::vector<std::uint32_t> v(len, 0);
    v[lead] = 1;
    while (true) {
      out.push_back(v);
      std::size_t j = len;
      while (j > lead + 1 && v[j - 1] == p - 1) v[--j] = 0;
      if (j == lead + 1) break;
      ++v[j - 1];
    }
  }
  return out;
}

bool normalize_residues(std::span<std::uint32_t> v, std::uint32_t p) {
  std::size_t c = 0;
  while (c < v.size() && v[c] == 0) ++c;
  if (c == v.size()) return false;
  if (v[c] != 1) {
    const std::uint64_t inv = mod_inverse(v[c], p);
    for (std::size_t j = c; j < v.size(); ++j) {
      v[j] = static_cast<std::uint32_t>(v[j] * inv % p);
    }
  }
  return true;
}

namespace {

constexpr std::size_t kMaxCodeTable = std::size_t{1} << 22;

std::uint64_t code_of(std::span<const std::uint32_t> v, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::uint32_t x : v) code = code * p + x;
  return code;
}

}  // namespace

PointTable::PointTable(const MultiprojectiveSpace& y)
    : space_(y), p_(y.field().modulus()) {
  if (!y.field().is_finite()) throw InputError("PointTable needs a finite field");
  const std::uint64_t count = y.point_count();
  if (count > kMaxPoints) {
    throw BudgetExceeded(y.shape_string() + " over " + y.field().name() + " has " +
                             std::to_string(count) + " points",
                         count, kMaxPoints);
  }
  const std::size_t k = y.factors();
  if (k > 64) throw InputError("PointTable supports at most 64 factors");
  factor_points_.resize(k);
  code_table_.resize(k);
  code_map_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    factor_points_[i] = projective_points(p_, y.dim(i));
    double table_size = 1;
    for (int t = 0; t <= y.dim(i); ++t) table_size *= p_;
    if (table_size <= static_cast<double>(kMaxCodeTable)) {
      code_table_[i].assign(static_cast<std::size_t>(table_size), -1);
      for (std::size_t j = 0; j < factor_points_[i].size(); ++j) {
        code_table_[i][code_of(factor_points_[i][j], p_)] = static_cast<std::int32_t>(j);
      }
    } else {
      for (std::size_t j = 0; j < factor_points_[i].size(); ++j) {
        code_map_[i][code_of(factor_points_[i][j], p_)] = static_cast<std::uint32_t>(j);
      }
    }
  }
  size_ = static_cast<std::size_t>(count);
  length_ = y.segre_length();
  radix_weight_.assign(k, 1);
  segre_stride_.assign(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) {
    radix_weight_[i] = radix_weight_[i + 1] * factor_points_[i + 1].size();
    segre_stride_[i] = segre_stride_[i + 1] * static_cast<std::size_t>(y.dim(i + 1) + 1);
  }
  digits_.resize(size_ * k);
  segre_.resize(size_ * length_);
  std::vector<std::uint32_t> cur, next;
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::size_t rem = idx;
    for (std::size_t i = 0; i < k; ++i) {
      digits_[idx * k + i] = static_cast<std::uint32_t>(rem / radix_weight_[i]);
      rem %= radix_weight_[i];
    }
    cur.assign(1, 1);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& c = factor_points_[i][digits_[idx * k + i]];
      next.clear();
      for (std::uint32_t a : cur) {
        for (std::uint32_t b : c) {
          next.push_back(static_cast<std::uint32_t>(
              static_cast<std::uint64_t>(a) * b % p_));
        }
      }
      cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), segre_.begin() + static_cast<std::ptrdiff_t>(idx * length_));
  }
}

std::size_t PointTable::compose(std::span<const std::size_t> digits) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) idx += digits[i] * radix_weight_[i];
  return idx;
}

MultiPoint PointTable::point(std::size_t index) const {
  std::vector<ProjPoint> comps;
  for (std::size_t i = 0; i < factors(); ++i) {
    comps.push_back(ProjPoint::from_residues(factor_points_[i][digit(index, i)], p_));
  }
  return MultiPoint(std::move(comps));
}

std::size_t PointTable::index_of(const MultiPoint& p) const {
  validate_point(p, space_);
  std::vector<std::size_t> digits(factors());
  std::vector<std::uint32_t> v;
  for (std::size_t i = 0; i < factors(); ++i) {
    v.clear();
    for (const Scalar& x : p[i].coords()) v.push_back(x.residue_value());
    digits[i] = *factor_lookup(i, v);
  }
  return compose(digits);
}

PointSet PointTable::make_set(std::span<const std::size_t> indices) const {
  std::vector<MultiPoint> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) pts.push_back(point(i));
  return PointSet(space_, std::move(pts));
}

std::vector<std::size_t> PointTable::indices_of(const PointSet& s) const {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(index_of(p));
  return out;
}

std::optional<std::size_t> PointTable::factor_lookup(
    std::size_t i, std::span<const std::uint32_t> v) const {
  std::uint32_t buf[64];
  std::vector<std::uint32_t> heap;
  std::span<std::uint32_t> w;
  if (v.size() <= 64) {
    w = std::span<std::uint32_t>(buf, v.size());
  } else {
    heap.resize(v.size());
    w = heap;
  }
  for (std::size_t j = 0; j < v.size(); ++j) w[j] = v[j] % p_;
  if (!normalize_residues(w, p_)) return std::nullopt;
  const std::uint64_t code = code_of(w, p_);
  if (!code_table_[i].empty()) {
    const std::int32_t j = code_table_[i][code];
    if (j < 0) return std::nullopt;
    return static_cast<std::size_t>(j);
  }
  auto it = code_map_[i].find(code);
  if (it == code_map_[i].end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> PointTable::decode(std::span<const std::uint32_t> v) const {
  if (v.size() != length_) throw InputError("decode: wrong vector length");
  std::size_t c = 0;
  while (c < length_ && v[c] == 0) ++c;
  if (c == length_) return std::nullopt;
  // The slice through c along factor i is proportional to the i-th
  // component of any rank-one preimage.
  const std::size_t k = factors();
  std::size_t digits[64];
  std::uint32_t slice[64];
  std::size_t rem = c;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = static_cast<std::size_t>(space_.dim(i)) + 1;
    const std::size_t d = rem / segre_stride_[i];
    rem %= segre_stride_[i];
    const std::size_t base = c - d * segre_stride_[i];
    for (std::size_t j = 0; j < len; ++j) slice[j] = v[base + j * segre_stride_[i]];
    const auto f = factor_lookup(i, std::span<const std::uint32_t>(slice, len));
    if (!f) return std::nullopt;
    digits[i] = *f;
  }
  const std::size_t idx = compose(std::span<const std::size_t>(digits, k));
  // Compare with v scaled so that v[c] = 1 (Segre vectors are normalized).
  const std::uint64_t inv = mod_inverse(v[c], p_);
  const auto s = segre(idx);
  for (std::size_t j = 0; j < length_; ++j) {
    if (s[j] != v[j] * inv % p_) return std::nullopt;
  }
  return idx;
}

}  // namespace segre
