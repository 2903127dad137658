#include "tft/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "tft/errors.hpp"

namespace tft {

namespace {

bool is_integer_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw StructuralError("rational with zero denominator");
  value_ = Value(numerator) / Value(denominator);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw StructuralError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  if (!is_integer_literal(num)) throw ParseError("invalid rational '" + std::string(text) + "'", 0);
  using Int = boost::multiprecision::mpz_int;
  Int n(std::string(num[0] == '+' ? num.substr(1) : num));
  Int d(1);
  if (slash != std::string_view::npos) {
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
      throw ParseError("invalid rational '" + std::string(text) + "'", 0);
    }
    d = Int(std::string(den));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  }
  return Rational(Value(n, d));
}

std::string Rational::numerator_str() const {
  return boost::multiprecision::numerator(value_).str();
}

std::string Rational::denominator_str() const {
  return boost::multiprecision::denominator(value_).str();
}

std::string Rational::str() const {
  auto den = denominator_str();
  if (den == "1") return numerator_str();
  return numerator_str() + "/" + den;
}

Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

std::string ScalarTraits<Complex>::format(const Complex& x) {
  auto clean = [](double v) { return std::abs(v) < 1e-15 ? 0.0 : v; };
  std::ostringstream os;
  os.precision(12);
  if (std::abs(x.imag()) <= kDefaultTolerance) {
    os << clean(x.real());
  } else {
    os << '(' << clean(x.real()) << ',' << clean(x.imag()) << ')';
  }
  return os.str();
}

}  // namespace tft
