#pragma once

// Scalar field used by every evaluator: exact rationals (default) or
// complex doubles compared under an absolute tolerance.

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace tft {

inline constexpr double kDefaultTolerance = 1e-9;

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator). Thin value wrapper over GMP's mpq via Boost.Multiprecision;
/// the wrapper keeps Boost's conversion templates away from Eigen.
class Rational {
 public:
  using Value = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                              boost::multiprecision::et_off>;

  Rational() = default;
  Rational(long long n) : value_(n) {}  // NOLINT: implicit on purpose, Eigen builds Scalar(0)
  Rational(long long numerator, long long denominator);
  explicit Rational(Value v) : value_(std::move(v)) {}

  /// Accepts "p", "-p", "p/q". Throws ParseError.
  static Rational parse(std::string_view text);

  const Value& value() const { return value_; }
  std::string numerator_str() const;
  std::string denominator_str() const;
  std::string str() const;
  bool is_zero() const { return value_.is_zero(); }
  double to_double() const { return value_.convert_to<double>(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(Value(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  Value value_;
};

Rational pow(const Rational& base, long long exponent);
Rational abs(const Rational& r);

using Complex = std::complex<double>;

/// Per-mode behaviour. A computation is instantiated for exactly one scalar
/// type, so mixing modes is rejected by the compiler.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode_name = "exact";
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x, double = kDefaultTolerance) { return x.is_zero(); }
  static bool equal(const Rational& a, const Rational& b, double = kDefaultTolerance) { return a == b; }
  static std::string format(const Rational& x) { return x.str(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode_name = "float";
  static Complex from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
  static bool is_zero(const Complex& x, double tol = kDefaultTolerance) { return std::abs(x) <= tol; }
  static bool equal(const Complex& a, const Complex& b, double tol = kDefaultTolerance) {
    return std::abs(a.real() - b.real()) <= tol && std::abs(a.imag() - b.imag()) <= tol;
  }
  static std::string format(const Complex& x);
};

template <class S>
concept FieldScalar = requires { ScalarTraits<S>::exact; };

/// Exact zero test used to skip terms in sparse loops (never tolerance based).
inline bool structurally_zero(const Rational& x) { return x.is_zero(); }
inline bool structurally_zero(const Complex& x) { return x == Complex(0.0, 0.0); }

template <FieldScalar S>
S power(const S& base, std::size_t exponent) {
  S result(1);
  for (std::size_t i = 0; i < exponent; ++i) result = result * base;
  return result;
}

}  // namespace tft

namespace Eigen {
template <>
struct NumTraits<tft::Rational> : GenericNumTraits<tft::Rational> {
  using Real = tft::Rational;
  using NonInteger = tft::Rational;
  using Nested = tft::Rational;
  using Literal = tft::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 20
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
