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

// Exact linear algebra over GF(p) and Q.
//
// Matrix is the general-purpose carrier; every routine here is a pure
// function of its arguments. Internally the work is routed to one of three
// kernels: a bit-packed GF(2) eliminator, a word-residue GF(p) eliminator,
// and fraction-free (Bareiss) elimination over the integers for Q.

#ifndef SEGRE_LINALG_HPP_
#define SEGRE_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "segre/field.hpp"

namespace segre {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);

  // All rows must have length `cols` and belong to `field`.
  static Matrix from_rows(const FieldSpec& field, std::size_t cols,
                          const std::vector<Vector>& rows);
  static Matrix identity(const FieldSpec& field, std::size_t n);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Scalar& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }

  Vector row(std::size_t r) const;
  std::vector<Vector> row_list() const;
  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

using ScalarMatrix = Matrix;

std::size_t rank(const Matrix& m);

// Reduced row echelon form with the zero rows removed. Canonical: equal row
// spaces give equal results.
Matrix rref(const Matrix& m);

// A basis of {x : m x = 0}, one vector per non-pivot column, in column order.
std::vector<Vector> kernel_basis(const Matrix& m);

// Returns coefficients c with sum_j c_j basis[j] == v, or nullopt when v is
// not in the span. When the basis is dependent, free coefficients are zero.
// Throws InputError on length mismatch.
std::optional<Vector> in_span(const Vector& v, const std::vector<Vector>& basis);

// Dimension of the linear span of the vectors (zero for an empty list).
std::size_t span_dimension(const std::vector<Vector>& vectors);

// Canonical (RREF) basis of span(u) and span(v) intersected. The inputs are
// expected to be linearly independent lists; vectors must share one length.
std::vector<Vector> subspace_intersection(const std::vector<Vector>& u,
                                          const std::vector<Vector>& v);

Vector multiply(const Matrix& m, const Vector& x);

// Rank of arbitrary row subsets of a fixed matrix. The rows are converted
// once into the kernel representation; each query copies only the selected
// rows. Over Q every row is scaled to a primitive integer row first.
class RowSubsetRanker {
 public:
  explicit RowSubsetRanker(const Matrix& m);

  std::size_t rank(std::span<const std::size_t> rows) const;
  // Bit i of mask selects row i; requires rows() <= 64.
  std::size_t rank_mask(std::uint64_t mask) const;
  std::size_t rows() const { return rows_; }

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> residues_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_per_row_ = 0;
  std::vector<mpz_class> integers_;
};

// Raw kernels. Exposed so the packed and plain paths can be cross-checked.
namespace kernels {

// Plain Gaussian elimination mod p on a row-major residue matrix.
std::size_t rank_mod_p(std::vector<std::uint32_t> entries, std::size_t rows,
                       std::size_t cols, std::uint32_t p);

// GF(2) elimination on bit-packed rows (words_per_row 64-bit words each).
std::size_t rank_gf2_packed(std::vector<std::uint64_t> words, std::size_t rows,
                            std::size_t words_per_row);

// Fraction-free (Bareiss) elimination on an integer matrix; every division is
// exact.
std::size_t rank_bareiss(std::vector<mpz_class> entries, std::size_t rows,
                         std::size_t cols);

}  // namespace kernels

// Incrementally maintained row space over GF(p), used by the enumeration
// harness. Rows are kept in semi-echelon form: each stored row has a pivot
// entry equal to one and zeros at the pivots of earlier rows. Over GF(2) the
// rows are bit-packed.
class PackedSpan {
 public:
  PackedSpan(std::uint32_t p, std::size_t length);

  std::uint32_t modulus() const { return p_; }
  std::size_t length() const { return length_; }
  std::size_t rank() const { return pivots_.size(); }

  // Appends v if it is independent of the current rows.
  bool insert(std::span<const std::uint32_t> v);
  bool contains(std::span<const std::uint32_t> v) const;
  // Removes the most recently inserted row.
  void pop();
  void clear();

  // Reduces v in place against the stored rows; returns true if the
  // remainder is nonzero.
  bool reduce(std::span<std::uint32_t> v) const;

  // Stored rows as residue vectors (they span the same space as the inputs).
  std::vector<std::vector<std::uint32_t>> basis() const;

 private:
  bool reduce_bits(std::span<std::uint64_t> w) const;
  void pack(std::span<const std::uint32_t> v, std::span<std::uint64_t> w) const;

  std::uint32_t p_;
  std::size_t length_;
  std::size_t words_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint32_t> rows_;  // GF(p), p > 2
  std::vector<std::uint64_t> bits_;  // GF(2)
  mutable std::vector<std::uint32_t> scratch_;
  mutable std::vector<std::uint64_t> scratch_bits_;
};

}  // namespace segre

#endif  // SEGRE_LINALG_HPP_
