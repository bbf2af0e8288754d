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

// Coefficient fields and exact scalars.
//
// Two kinds of field are supported: prime fields GF(p) and the rationals.
// A Scalar always holds its canonical representative (a residue in [0, p) or
// a reduced fraction with positive denominator), so equality of scalars is
// equality of representations.

#ifndef SEGRE_FIELD_HPP_
#define SEGRE_FIELD_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace segre {

enum class FieldKind { kPrime, kRational };

class FieldSpec {
 public:
  // Largest supported modulus; products of two residues fit in 64 bits and
  // the packed kernels keep residues in 32-bit words.
  static constexpr std::uint32_t kMaxModulus = 65521;

  // Throws InputError unless p is a prime in [2, kMaxModulus].
  static FieldSpec prime(std::uint32_t p);
  static FieldSpec rationals();

  // Accepts "gf3", "GF3", "GF(3)", "3", "q", "Q", "rationals".
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == FieldKind::kPrime; }
  // Zero for the rationals.
  std::uint32_t modulus() const { return modulus_; }
  // "GF(3)" or "Q".
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  friend class Scalar;

  FieldSpec(FieldKind kind, std::uint32_t modulus)
      : kind_(kind), modulus_(modulus) {}

  FieldKind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

// Number of points of P^n over GF(q), i.e. (q^{n+1} - 1) / (q - 1).
std::uint64_t projective_point_count(std::uint32_t q, int n);

class Scalar {
 public:
  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_int(const FieldSpec& field, long long value);
  static Scalar from_rational(const mpq_class& value);
  // Residue constructor for GF(p); value is reduced mod p.
  static Scalar residue(std::uint32_t value, std::uint32_t modulus);
  // Parses "7", "-3", "-3/5". Over GF(p), a fraction a/b means a * b^{-1}.
  static Scalar parse(const FieldSpec& field, std::string_view text);

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  // Residue value; only valid over GF(p).
  std::uint32_t residue_value() const;
  // Only valid over the rationals.
  const mpq_class& rational_value() const;

  Scalar operator-() const;
  Scalar inverse() const;  // throws std::domain_error on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Total order: residues numerically, rationals by value.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  // Decimal form: "7", "-3/5". Residues print in [0, p).
  std::string to_string() const;

 private:
  struct Residue {
    std::uint32_t value;
    std::uint32_t modulus;
  };

  friend void check_same_field(const Scalar& a, const Scalar& b);

  explicit Scalar(Residue r) : value_(r) {}
  explicit Scalar(mpq_class q) : value_(std::move(q)) {}

  std::variant<Residue, mpq_class> value_;
};

// Modular helpers shared by the packed kernels.
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace segre

#endif  // SEGRE_FIELD_HPP_
