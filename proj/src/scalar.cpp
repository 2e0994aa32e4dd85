#include "qhopf/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace qhopf {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !qhopf::is_prime(p)) {
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
  }
  return Field(Kind::prime, static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "q" || text == "rational") return rational();
  if (text.starts_with("p:") || text.starts_with("F_")) text.remove_prefix(2);
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse field '" + std::string(text) + "'");
  }
  return prime(p);
}

std::string Field::to_string() const {
  return is_prime() ? "p:" + std::to_string(p_) : std::string("Q");
}

namespace {

std::uint32_t reduce(long long value, std::uint32_t p) {
  long long r = value % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce(const BigInt& value, std::uint32_t p) {
  BigInt r = value % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exponent > 0) {
    if (exponent & 1) result = result * base % p;
    base = base * base % p;
    exponent >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar::Scalar(Field field, long long value) : field_(field) {
  if (field_.is_prime()) {
    residue_ = reduce(value, field_.characteristic());
  } else if (value != 0) {
    q_ = std::make_shared<const Rational>(value);
  }
}

Scalar::Scalar(Field field, const Rational& value) : field_(field) {
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    const std::uint32_t den = reduce(boost::multiprecision::denominator(value), p);
    if (den == 0) throw DivisionByZero();
    const std::uint32_t num = reduce(boost::multiprecision::numerator(value), p);
    residue_ = static_cast<std::uint32_t>(std::uint64_t{num} * pow_mod(den, p - 2, p) % p);
  } else {
    set_rational(value);
  }
}

void Scalar::set_rational(Rational value) {
  if (value == 0) {
    q_.reset();
  } else {
    q_ = std::make_shared<const Rational>(std::move(value));
  }
}

Scalar Scalar::parse(Field field, std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    std::string s(digits);
    if (s.empty() || s == "-" || s == "+") throw std::invalid_argument("bad scalar '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad scalar '" + std::string(text) + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(field, Rational(parse_int(text)));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DivisionByZero();
  return Scalar(field, Rational(num) / Rational(den));
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return residue_ == 1 % field_.characteristic();
  return q_ != nullptr && *q_ == 1;
}

Rational Scalar::to_rational() const {
  if (field_.is_prime()) return Rational(residue_);
  return q_ ? *q_ : Rational(0);
}

void Scalar::require_same_field(const Scalar& other) const {
  if (!(field_ == other.field_)) {
    throw FieldMismatch("scalars from " + field_.to_string() + " and " + other.field_.to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar r(field_);
  if (field_.is_prime()) {
    r.residue_ = residue_ == 0 ? 0 : field_.characteristic() - residue_;
  } else if (q_) {
    r.q_ = std::make_shared<const Rational>(-*q_);
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    std::uint64_t s = std::uint64_t{residue_} + rhs.residue_;
    residue_ = static_cast<std::uint32_t>(s >= p ? s - p : s);
  } else if (rhs.q_) {
    set_rational(q_ ? *q_ + *rhs.q_ : *rhs.q_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    residue_ = residue_ >= rhs.residue_ ? residue_ - rhs.residue_ : residue_ + (p - rhs.residue_);
  } else if (rhs.q_) {
    set_rational(q_ ? *q_ - *rhs.q_ : Rational(-*rhs.q_));
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_field(rhs);
  if (field_.is_prime()) {
    residue_ = static_cast<std::uint32_t>(std::uint64_t{residue_} * rhs.residue_ %
                                          field_.characteristic());
  } else if (!q_ || !rhs.q_) {
    q_.reset();
  } else {
    set_rational(*q_ * *rhs.q_);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_field(rhs);
  return *this *= rhs.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Scalar r(field_);
  if (field_.is_prime()) {
    const std::uint32_t p = field_.characteristic();
    r.residue_ = pow_mod(residue_, p - 2, p);
  } else {
    r.q_ = std::make_shared<const Rational>(Rational(1) / *q_);
  }
  return r;
}

Scalar Scalar::pow(std::int64_t exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  Scalar result = one(field_);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.field_.is_prime()) return a.residue_ == b.residue_;
  if (!a.q_ || !b.q_) return a.q_ == b.q_;
  return *a.q_ == *b.q_;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue_);
  if (!q_) return "0";
  return q_->str();
}

Scalar root_of_unity(Field field, unsigned n) {
  if (n == 0) throw std::invalid_argument("root_of_unity: n must be positive");
  if (!field.is_prime()) {
    if (n == 1) return Scalar::one(field);
    if (n == 2) return Scalar(field, -1);
    throw NoSuchRoot("no primitive " + std::to_string(n) + "-th root of unity in Q");
  }
  const std::uint32_t p = field.characteristic();
  if ((p - 1) % n != 0) {
    throw NoSuchRoot("no primitive " + std::to_string(n) + "-th root of unity in F_" +
                     std::to_string(p));
  }
  auto has_order_n = [&](std::uint32_t z) {
    if (pow_mod(z, n, p) != 1) return false;
    for (unsigned m = 1; m < n; ++m) {
      if (n % m == 0 && pow_mod(z, m, p) == 1) return false;
    }
    return true;
  };
  // The n-th roots form a cyclic group; once one generator z is found, the
  // primitive ones are exactly z^k with gcd(k, n) = 1.
  for (std::uint32_t h = 2; h < p || n == 1; ++h) {
    const std::uint32_t z = n == 1 ? 1 : pow_mod(h, (p - 1) / n, p);
    if (!has_order_n(z)) continue;
    std::uint32_t best = z;
    for (unsigned k = 2; k < n; ++k) {
      if (std::gcd(k, n) == 1) best = std::min(best, pow_mod(z, k, p));
    }
    return Scalar(field, static_cast<long long>(best));
  }
  throw NoSuchRoot("no primitive root found");  // unreachable for prime p
}

Scalar arith(ArithOp op, const Scalar& a, const Scalar* b) {
  auto rhs = [&]() -> const Scalar& {
    if (b == nullptr) throw std::invalid_argument("binary operation needs two operands");
    return *b;
  };
  switch (op) {
    case ArithOp::add: return a + rhs();
    case ArithOp::sub: return a - rhs();
    case ArithOp::mul: return a * rhs();
    case ArithOp::div: return a / rhs();
    case ArithOp::neg: return -a;
    case ArithOp::inv: return a.inverse();
  }
  throw std::invalid_argument("unknown arithmetic op");
}

}  // namespace qhopf
