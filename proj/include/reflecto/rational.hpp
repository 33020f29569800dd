#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace reflecto {

using BigInt = mpz_class;

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_positive() const { return sign() > 0; }
  bool is_negative() const { return sign() < 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Canonical "p" or "p/q" text.
  std::string to_string() const;
  double to_double() const { return value_.get_d(); }

  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class value_{0};
};

using RatVector = std::vector<Rational>;

/// Parses "p", "-p", "p/q" or "-p/q" with decimal digits only.
/// Throws ParseError on malformed text or a zero denominator.
Rational rat_parse(std::string_view text);

/// Splits a comma-separated list of rationals ("1,2/3,-1").
RatVector parse_rational_list(std::string_view csv);

std::vector<std::string> to_strings(const RatVector& v);

Rational abs(const Rational& r);

}  // namespace reflecto
