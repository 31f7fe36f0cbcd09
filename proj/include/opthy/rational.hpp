#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace opthy {

/// Exact rational number. Always normalized: positive denominator and
/// gcd(|num|, den) == 1, so structural equality is value equality.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
  Rational(const Integer& num, const Integer& den);

  /// Parses "num/den" or an integer literal ("3/8", "-1/2", "1").
  static Rational parse(std::string_view text);

  Integer num() const { return boost::multiprecision::numerator(value_); }
  Integer den() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_.sign(); }
  double to_double() const { return static_cast<double>(value_); }

  /// Canonical text form: "3/8", or just "1" when the denominator is 1.
  std::string str() const;

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Value = boost::multiprecision::cpp_rational;
  explicit Rational(Value v) : value_(std::move(v)) {}
  Value value_{0};
};

/// rat(3, 6) == 1/2. Throws ValidationError when den == 0.
Rational rat(std::int64_t num, std::int64_t den);

Rational abs(const Rational& r);

}  // namespace opthy
