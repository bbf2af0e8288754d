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

#include "segre/field.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "segre/error.hpp"

namespace segre {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t projective_point_count(std::uint32_t q, int n) {
  std::uint64_t count = 0;
  std::uint64_t power = 1;
  for (int i = 0; i <= n; ++i) {
    count += power;
    power *= q;
  }
  return count;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p > kMaxModulus || !is_prime(p)) {
    throw InputError("field modulus must be a prime <= " +
                     std::to_string(kMaxModulus) + ", got " +
                     std::to_string(p));
  }
  return FieldSpec(FieldKind::kPrime, p);
}

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::kRational, 0); }

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s == "q" || s == "qq" || s == "rationals" || s == "rational") {
    return rationals();
  }
  std::string digits = s;
  if (digits.rfind("gf", 0) == 0) digits = digits.substr(2);
  if (!digits.empty() && digits.front() == '(' && digits.back() == ')') {
    digits = digits.substr(1, digits.size() - 2);
  }
  if (digits.empty() || digits.size() > 9 ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InputError("unrecognized field '" + std::string(text) + "'");
  }
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string FieldSpec::name() const {
  if (kind_ == FieldKind::kRational) return "Q";
  return "GF(" + std::to_string(modulus_) + ")";
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  if (new_r == 0) throw std::domain_error("inverse of zero");
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Scalar Scalar::zero(const FieldSpec& field) { return from_int(field, 0); }

Scalar Scalar::one(const FieldSpec& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const FieldSpec& field, long long value) {
  if (field.is_finite()) {
    const long long p = field.modulus();
    long long r = value % p;
    if (r < 0) r += p;
    return Scalar(Residue{static_cast<std::uint32_t>(r), field.modulus()});
  }
  return Scalar(mpq_class(static_cast<long>(value)));
}

Scalar Scalar::from_rational(const mpq_class& value) {
  mpq_class q(value);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::residue(std::uint32_t value, std::uint32_t modulus) {
  return Scalar(Residue{value % modulus, modulus});
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  auto valid_integer = [](const std::string& t) {
    std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (start == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(start), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  const std::size_t slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw InputError("malformed scalar '" + std::string(text) + "'");
  }
  const mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  const mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  if (!field.is_finite()) return from_rational(mpq_class(n, d));
  const mpz_class p(field.modulus());
  mpz_class nr = n % p;
  if (nr < 0) nr += p;
  mpz_class dr = d % p;
  if (dr < 0) dr += p;
  if (dr == 0) {
    throw InputError("denominator of '" + std::string(text) +
                     "' vanishes in " + field.name());
  }
  const auto nv = static_cast<std::uint32_t>(nr.get_ui());
  const auto dv = static_cast<std::uint32_t>(dr.get_ui());
  const std::uint64_t v =
      static_cast<std::uint64_t>(nv) * mod_inverse(dv, field.modulus()) %
      field.modulus();
  return Scalar(Residue{static_cast<std::uint32_t>(v), field.modulus()});
}

FieldSpec Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return FieldSpec(FieldKind::kPrime, r->modulus);
  }
  return FieldSpec::rationals();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint32_t Scalar::residue_value() const {
  return std::get<Residue>(value_).value;
}

const mpq_class& Scalar::rational_value() const {
  return std::get<mpq_class>(value_);
}

void check_same_field(const Scalar& a, const Scalar& b) {
  const auto* r = std::get_if<Scalar::Residue>(&a.value_);
  const auto* s = std::get_if<Scalar::Residue>(&b.value_);
  const bool same = (r == nullptr && s == nullptr) ||
                    (r != nullptr && s != nullptr && r->modulus == s->modulus);
  if (!same) {
    throw InputError("scalars from different fields: " + a.field().name() +
                     " vs " + b.field().name());
  }
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{mod_inverse(r->value, r->modulus), r->modulus});
  }
  return Scalar(mpq_class(1 / std::get<mpq_class>(value_)));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  check_same_field(a, b);
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& s = std::get<Scalar::Residue>(b.value_);
    return Scalar(Scalar::Residue{
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(r->value) + s.value) %
                                   r->modulus),
        r->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_)));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  check_same_field(a, b);
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& s = std::get<Scalar::Residue>(b.value_);
    return Scalar(Scalar::Residue{
        static_cast<std::uint32_t>(static_cast<std::uint64_t>(r->value) * s.value %
                                   r->modulus),
        r->modulus});
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_)));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& s = std::get<Scalar::Residue>(b.value_);
    return r->value == s.value && r->modulus == s.modulus;
  }
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  check_same_field(a, b);
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    return r->value <=> std::get<Scalar::Residue>(b.value_).value;
  }
  const int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str(10);
}

}  // namespace segre
