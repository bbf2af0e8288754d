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

#include <algorithm>
#include <utility>

#include "segre/error.hpp"

namespace segre {
namespace {

std::vector<std::uint32_t> to_residues(const Matrix& m) {
  std::vector<std::uint32_t> out(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[r * m.cols() + c] = m(r, c).residue_value();
    }
  }
  return out;
}

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::vector<std::uint64_t> to_bits(const Matrix& m) {
  const std::size_t wpr = words_for(m.cols());
  std::vector<std::uint64_t> out(m.rows() * wpr, 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).residue_value() & 1u) {
        out[r * wpr + c / 64] |= std::uint64_t{1} << (c % 64);
      }
    }
  }
  return out;
}

// Each row is multiplied by the lcm of its denominators and divided by the
// gcd of its numerators; row scaling does not change the rank of any subset.
std::vector<mpz_class> to_integer_rows(const Matrix& m) {
  std::vector<mpz_class> out(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              m(r, c).rational_value().get_den_mpz_t());
    }
    mpz_class g = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& q = m(r, c).rational_value();
      mpz_class v = q.get_num() * (l / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      out[r * m.cols() + c] = std::move(v);
    }
    if (g > 1) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        mpz_divexact(out[r * m.cols() + c].get_mpz_t(),
                     out[r * m.cols() + c].get_mpz_t(), g.get_mpz_t());
      }
    }
  }
  return out;
}

template <typename T>
void swap_rows(std::vector<T>& e, std::size_t cols, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(e.begin() + static_cast<std::ptrdiff_t>(a * cols),
                   e.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols),
                   e.begin() + static_cast<std::ptrdiff_t>(b * cols));
}

// Fraction-free forward elimination. On return the first `rank` rows are in
// echelon form with the returned pivot columns.
std::vector<std::size_t> bareiss_forward(std::vector<mpz_class>& a,
                                         std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    swap_rows(a, cols, r, piv);
    const mpz_class& p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class f = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class& x = a[i * cols + j];
        x *= p;
        t = f * a[r * cols + j];
        x -= t;
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

struct Echelon {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;
};

Echelon rref_mod(const Matrix& m) {
  const std::uint32_t p = m.field().modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint32_t> e = to_residues(m);
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && e[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    swap_rows(e, cols, r, piv);
    const std::uint64_t inv = mod_inverse(e[r * cols + c], p);
    for (std::size_t j = c; j < cols; ++j) {
      e[r * cols + j] = static_cast<std::uint32_t>(e[r * cols + j] * inv % p);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || e[i * cols + c] == 0) continue;
      const std::uint64_t g = p - e[i * cols + c];
      for (std::size_t j = c; j < cols; ++j) {
        e[i * cols + j] =
            static_cast<std::uint32_t>((e[i * cols + j] + g * e[r * cols + j]) % p);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) {
    Vector row;
    row.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      row.push_back(Scalar::residue(e[i * cols + j], p));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Bareiss to echelon form over Z, then exact back-substitution over Q on the
// (already small) echelon rows.
Echelon rref_rational(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mpz_class> a = to_integer_rows(m);
  Echelon out;
  out.pivots = bareiss_forward(a, rows, cols);
  const std::size_t r = out.pivots.size();
  std::vector<std::vector<mpq_class>> q(r, std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& lead = a[i * cols + out.pivots[i]];
    for (std::size_t j = 0; j < cols; ++j) {
      q[i][j] = mpq_class(a[i * cols + j], lead);
      q[i][j].canonicalize();
    }
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t c = out.pivots[i];
    for (std::size_t k = 0; k < i; ++k) {
      if (q[k][c] == 0) continue;
      const mpq_class f = q[k][c];
      for (std::size_t j = c; j < cols; ++j) q[k][j] -= f * q[i][j];
    }
  }
  for (auto& row : q) {
    Vector v;
    v.reserve(cols);
    for (auto& x : row) v.push_back(Scalar::from_rational(x));
    out.rows.push_back(std::move(v));
  }
  return out;
}

Echelon rref_impl(const Matrix& m) {
  return m.field().is_finite() ? rref_mod(m) : rref_rational(m);
}

// Infers the common field and length of a vector list; throws on mismatch.
std::pair<FieldSpec, std::size_t> shape_of(const std::vector<Vector>& vs,
                                           const FieldSpec& fallback,
                                           std::size_t fallback_len) {
  if (vs.empty()) return {fallback, fallback_len};
  const std::size_t n = vs.front().size();
  if (n == 0) throw InputError("empty vector");
  const FieldSpec f = vs.front().front().field();
  for (const auto& v : vs) {
    if (v.size() != n) throw InputError("vector length mismatch");
  }
  return {f, n};
}

}  // namespace

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field),
      rows_(rows),
      cols_(cols),
      entries_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::from_rows(const FieldSpec& field, std::size_t cols,
                         const std::vector<Vector>& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InputError("row " + std::to_string(r) + " has length " +
                       std::to_string(rows[r].size()) + ", expected " +
                       std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c].field() != field) {
        throw InputError("matrix entry outside " + field.name());
      }
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::vector<Vector> Matrix::row_list() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix m(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(rows[i], c);
  }
  return m;
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (!m.field().is_finite()) {
    return kernels::rank_bareiss(to_integer_rows(m), m.rows(), m.cols());
  }
  if (m.field().modulus() == 2) {
    return kernels::rank_gf2_packed(to_bits(m), m.rows(), words_for(m.cols()));
  }
  return kernels::rank_mod_p(to_residues(m), m.rows(), m.cols(),
                             m.field().modulus());
}

Matrix rref(const Matrix& m) {
  Echelon e = rref_impl(m);
  return Matrix::from_rows(m.field(), m.cols(), e.rows);
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Echelon e = rref_impl(m);
  const FieldSpec& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector x(m.cols(), Scalar::zero(f));
    x[free] = Scalar::one(f);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      x[e.pivots[i]] = -e.rows[i][free];
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<Vector> in_span(const Vector& v, const std::vector<Vector>& basis) {
  if (v.empty()) throw InputError("empty vector");
  const FieldSpec f = v.front().field();
  shape_of(basis, f, v.size());
  if (!basis.empty() && basis.front().size() != v.size()) {
    throw InputError("vector length mismatch");
  }
  // Columns are the basis vectors, followed by v.
  Matrix a(f, v.size(), basis.size() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) a(i, j) = basis[j][i];
    a(i, basis.size()) = v[i];
  }
  const Echelon e = rref_impl(a);
  if (!e.pivots.empty() && e.pivots.back() == basis.size()) return std::nullopt;
  Vector coeffs(basis.size(), Scalar::zero(f));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    coeffs[e.pivots[i]] = e.rows[i][basis.size()];
  }
  return coeffs;
}

std::size_t span_dimension(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return 0;
  const auto [f, n] = shape_of(vectors, FieldSpec::rationals(), 0);
  return rank(Matrix::from_rows(f, n, vectors));
}

std::vector<Vector> subspace_intersection(const std::vector<Vector>& u,
                                          const std::vector<Vector>& v) {
  if (u.empty() || v.empty()) return {};
  const auto [f, n] = shape_of(u, FieldSpec::rationals(), 0);
  const auto [g, m] = shape_of(v, f, n);
  if (f != g || n != m) throw InputError("subspaces live in different spaces");
  // Kernel of [u | -v]: each kernel vector gives sum a_i u_i = sum b_j v_j.
  Matrix a(f, n, u.size() + v.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) a(i, j) = u[j][i];
    for (std::size_t j = 0; j < v.size(); ++j) a(i, u.size() + j) = -v[j][i];
  }
  std::vector<Vector> common;
  for (const Vector& k : kernel_basis(a)) {
    Vector x(n, Scalar::zero(f));
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (k[j].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) x[i] += k[j] * u[j][i];
    }
    if (std::any_of(x.begin(), x.end(), [](const Scalar& s) { return !s.is_zero(); })) {
      common.push_back(std::move(x));
    }
  }
  if (common.empty()) return {};
  return rref_impl(Matrix::from_rows(f, n, common)).rows;
}

Vector multiply(const Matrix& m, const Vector& x) {
  if (x.size() != m.cols()) throw InputError("matrix-vector length mismatch");
  Vector y(m.rows(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) y[r] += m(r, c) * x[c];
  }
  return y;
}

RowSubsetRanker::RowSubsetRanker(const Matrix& m)
    : field_(m.field()), rows_(m.rows()), cols_(m.cols()) {
  if (!field_.is_finite()) {
    integers_ = to_integer_rows(m);
  } else if (field_.modulus() == 2) {
    words_per_row_ = words_for(cols_);
    bits_ = to_bits(m);
  } else {
    residues_ = to_residues(m);
  }
}

std::size_t RowSubsetRanker::rank(std::span<const std::size_t> rows) const {
  if (rows.empty() || cols_ == 0) return 0;
  for (std::size_t r : rows) {
    if (r >= rows_) throw InputError("row index out of range");
  }
  if (!field_.is_finite()) {
    std::vector<mpz_class> sub;
    sub.reserve(rows.size() * cols_);
    for (std::size_t r : rows) {
      for (std::size_t c = 0; c < cols_; ++c) sub.push_back(integers_[r * cols_ + c]);
    }
    return kernels::rank_bareiss(std::move(sub), rows.size(), cols_);
  }
  if (field_.modulus() == 2) {
    std::vector<std::uint64_t> sub;
    sub.reserve(rows.size() * words_per_row_);
    for (std::size_t r : rows) {
      sub.insert(sub.end(), bits_.begin() + static_cast<std::ptrdiff_t>(r * words_per_row_),
                 bits_.begin() + static_cast<std::ptrdiff_t>((r + 1) * words_per_row_));
    }
    return kernels::rank_gf2_packed(std::move(sub), rows.size(), words_per_row_);
  }
  std::vector<std::uint32_t> sub;
  sub.reserve(rows.size() * cols_);
  for (std::size_t r : rows) {
    sub.insert(sub.end(), residues_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               residues_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  return kernels::rank_mod_p(std::move(sub), rows.size(), cols_, field_.modulus());
}

std::size_t RowSubsetRanker::rank_mask(std::uint64_t mask) const {
  if (rows_ > 64) throw InputError("rank_mask needs at most 64 rows");
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < rows_; ++i) {
    if ((mask >> i) & 1u) rows.push_back(i);
  }
  return rank(rows);
}

namespace kernels {

std::size_t rank_mod_p(std::vector<std::uint32_t> e, std::size_t rows,
                       std::size_t cols, std::uint32_t p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && e[piv * cols + c] % p == 0) ++piv;
    if (piv == rows) continue;
    swap_rows(e, cols, r, piv);
    const std::uint64_t inv = mod_inverse(e[r * cols + c] % p, p);
    for (std::size_t j = c; j < cols; ++j) {
      e[r * cols + j] = static_cast<std::uint32_t>(e[r * cols + j] % p * inv % p);
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint32_t f = e[i * cols + c] % p;
      if (f == 0) continue;
      const std::uint64_t g = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        e[i * cols + j] =
            static_cast<std::uint32_t>((e[i * cols + j] + g * e[r * cols + j]) % p);
      }
    }
    ++r;
  }
  return r;
}

std::size_t rank_gf2_packed(std::vector<std::uint64_t> w, std::size_t rows,
                            std::size_t wpr) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < wpr && r < rows; ++k) {
    for (unsigned b = 0; b < 64 && r < rows; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t piv = r;
      while (piv < rows && !(w[piv * wpr + k] & bit)) ++piv;
      if (piv == rows) continue;
      swap_rows(w, wpr, r, piv);
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (!(w[i * wpr + k] & bit)) continue;
        for (std::size_t j = k; j < wpr; ++j) w[i * wpr + j] ^= w[r * wpr + j];
      }
      ++r;
    }
  }
  return r;
}

std::size_t rank_bareiss(std::vector<mpz_class> entries, std::size_t rows,
                         std::size_t cols) {
  return bareiss_forward(entries, rows, cols).size();
}

}  // namespace kernels

PackedSpan::PackedSpan(std::uint32_t p, std::size_t length)
    : p_(p), length_(length), words_(words_for(length)) {
  if (p < 2) throw InputError("PackedSpan needs a prime modulus");
  scratch_.resize(length_);
  scratch_bits_.resize(words_);
}

void PackedSpan::pack(std::span<const std::uint32_t> v,
                      std::span<std::uint64_t> w) const {
  std::fill(w.begin(), w.end(), 0);
  for (std::size_t i = 0; i < length_; ++i) {
    if (v[i] & 1u) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

bool PackedSpan::reduce_bits(std::span<std::uint64_t> w) const {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if ((w[c / 64] >> (c % 64)) & 1u) {
      const std::uint64_t* row = bits_.data() + i * words_;
      for (std::size_t k = c / 64; k < words_; ++k) w[k] ^= row[k];
    }
  }
  for (std::uint64_t x : w) {
    if (x) return true;
  }
  return false;
}

bool PackedSpan::reduce(std::span<std::uint32_t> v) const {
  if (v.size() != length_) throw InputError("PackedSpan length mismatch");
  if (p_ == 2) {
    pack(v, scratch_bits_);
    const bool nonzero = reduce_bits(scratch_bits_);
    for (std::size_t i = 0; i < length_; ++i) {
      v[i] = static_cast<std::uint32_t>((scratch_bits_[i / 64] >> (i % 64)) & 1u);
    }
    return nonzero;
  }
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const std::size_t c = pivots_[i];
    const std::uint32_t f = v[c];
    if (f == 0) continue;
    const std::uint64_t g = p_ - f;
    const std::uint32_t* row = rows_.data() + i * length_;
    // Stored rows vanish before their pivot.
    for (std::size_t j = c; j < length_; ++j) {
      if (row[j]) v[j] = static_cast<std::uint32_t>((v[j] + g * row[j]) % p_);
    }
  }
  return std::any_of(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
}

bool PackedSpan::insert(std::span<const std::uint32_t> v) {
  if (v.size() != length_) throw InputError("PackedSpan length mismatch");
  if (p_ == 2) {
    pack(v, scratch_bits_);
    if (!reduce_bits(scratch_bits_)) return false;
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_; ++k) {
      if (scratch_bits_[k]) {
        c = k * 64 + static_cast<std::size_t>(__builtin_ctzll(scratch_bits_[k]));
        break;
      }
    }
    bits_.insert(bits_.end(), scratch_bits_.begin(), scratch_bits_.end());
    pivots_.push_back(c);
    return true;
  }
  for (std::size_t i = 0; i < length_; ++i) scratch_[i] = v[i] % p_;
  if (!reduce(scratch_)) return false;
  std::size_t c = 0;
  while (scratch_[c] == 0) ++c;
  const std::uint64_t inv = mod_inverse(scratch_[c], p_);
  for (std::size_t j = c; j < length_; ++j) {
    scratch_[j] = static_cast<std::uint32_t>(scratch_[j] * inv % p_);
  }
  rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
  pivots_.push_back(c);
  return true;
}

bool PackedSpan::contains(std::span<const std::uint32_t> v) const {
  if (v.size() != length_) throw InputError("PackedSpan length mismatch");
  if (p_ == 2) {
    pack(v, scratch_bits_);
    return !reduce_bits(scratch_bits_);
  }
  for (std::size_t i = 0; i < length_; ++i) scratch_[i] = v[i] % p_;
  return !reduce(scratch_);
}

void PackedSpan::pop() {
  if (pivots_.empty()) return;
  pivots_.pop_back();
  if (p_ == 2) {
    bits_.resize(pivots_.size() * words_);
  } else {
    rows_.resize(pivots_.size() * length_);
  }
}

void PackedSpan::clear() {
  pivots_.clear();
  rows_.clear();
  bits_.clear();
}

std::vector<std::vector<std::uint32_t>> PackedSpan::basis() const {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    std::vector<std::uint32_t> row(length_);
    for (std::size_t j = 0; j < length_; ++j) {
      row[j] = p_ == 2 ? static_cast<std::uint32_t>(
                             (bits_[i * words_ + j / 64] >> (j % 64)) & 1u)
                       : rows_[i * length_ + j];
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace segre
