#include "opthy/rational.hpp"

#include "opthy/errors.hpp"

#include <cctype>

namespace opthy {

namespace {

Rational::Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw ValidationError("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw ValidationError("malformed rational: '" + std::string(whole) + "'");
    }
  }
  if (text[0] == '+') text.remove_prefix(1);
  return Rational::Integer(std::string(text));
}

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  value_ = den < 0 ? Value(-num, -den) : Value(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text), Integer(1));
  auto num = parse_integer(text.substr(0, slash), text);
  auto den = parse_integer(text.substr(slash + 1), text);
  return Rational(num, den);
}

std::string Rational::str() const {
  auto d = den();
  if (d == 1) return num().str();
  return num().str() + "/" + d.str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("division by zero rational");
  value_ /= o.value_;
  return *this;
}

Rational rat(std::int64_t num, std::int64_t den) {
  return Rational(Rational::Integer(num), Rational::Integer(den));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace opthy
