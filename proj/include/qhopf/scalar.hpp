#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "qhopf/errors.hpp"

namespace qhopf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The base field: a prime field F_p (p < 2^31) or the rationals.
class Field {
 public:
  enum class Kind : std::uint8_t { prime, rational };

  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  static Field rational() noexcept { return Field(Kind::rational, 0); }

  /// Parses "p:7", "7" or "Q".
  static Field parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint32_t characteristic() const noexcept { return p_; }

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(Kind kind, std::uint32_t p) noexcept : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An exact field element in canonical form: a residue in [0,p) or a reduced
/// fraction with positive denominator. Equality is representation equality.
class Scalar {
 public:
  explicit Scalar(Field field) noexcept : field_(field) {}
  Scalar(Field field, long long value);
  Scalar(Field field, const Rational& value);

  /// Parses a decimal integer or fraction such as "13" or "-2/3".
  static Scalar parse(Field field, std::string_view text);

  static Scalar zero(Field field) noexcept { return Scalar(field); }
  static Scalar one(Field field) { return Scalar(field, 1); }

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return field_.is_prime() ? residue_ == 0 : q_ == nullptr; }
  bool is_one() const;

  /// Residue for prime fields (0 for rationals).
  std::uint32_t residue() const noexcept { return residue_; }
  /// Exact value as a rational; for prime fields the residue.
  Rational to_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(std::int64_t exponent) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical decimal form used in JSON ("13", "-2/3").
  std::string to_string() const;

 private:
  void require_same_field(const Scalar& other) const;
  void set_rational(Rational value);

  Field field_;
  std::uint32_t residue_ = 0;
  std::shared_ptr<const Rational> q_;  // null encodes zero
};

/// Primitive n-th root of unity with the smallest canonical representative.
/// Throws NoSuchRoot when p is not 1 mod n (or n > 2 over the rationals).
Scalar root_of_unity(Field field, unsigned n);

enum class ArithOp { add, sub, mul, div, neg, inv };

/// Dispatching form of the field operations; `b` is ignored for neg and inv.
Scalar arith(ArithOp op, const Scalar& a, const Scalar* b = nullptr);

}  // namespace qhopf
