#pragma once

// Scalar backends and the complex coefficient type shared by every module.
//
// Two backends are supported:
//   double    -- the float backend, used for randomized sweeps
//   Rational  -- GMP-backed exact rationals, used for regression fixtures
//
// Everything above this header is templated on the scalar and only talks to
// it through ordinary arithmetic plus scalar_traits<S>.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace coefbound {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Bad arguments or configuration (maps to CLI exit code 2).
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematical precondition violated (e.g. |x| != 1 for a kernel point).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view backend = "float";
  // absolute tolerance for unimodularity and weight normalization
  static constexpr double unit_tol = 1e-12;

  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static double parse(std::string_view text);
  /// 17 significant digits, round-trippable.
  static std::string format(double x);
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view backend = "rational";

  /// Exact binary value of x.
  static Rational from_double(double x) { return Rational(x); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  /// Accepts "p/q", integers and plain or scientific decimals ("0.25", "1e-3"),
  /// all converted exactly.
  static Rational parse(std::string_view text);
  /// "p/q", or "p" when the denominator is 1.
  static std::string format(const Rational& x);
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  { scalar_traits<S>::exact } -> std::convertible_to<bool>;
  { a + b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { a < b } -> std::convertible_to<bool>;
};

template <Scalar S>
inline double to_double(const S& x) {
  return scalar_traits<S>::to_double(x);
}

template <Scalar S>
inline std::string format_scalar(const S& x) {
  return scalar_traits<S>::format(x);
}

template <Scalar S>
inline S parse_scalar(std::string_view text) {
  return scalar_traits<S>::parse(text);
}

/// Integer power by repeated squaring; negative exponents invert.
template <Scalar S>
S ipow(S base, int e) {
  if (e < 0) return S(1) / ipow(base, -e);
  S result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

template <Scalar S>
inline S abs_scalar(const S& x) {
  return x < S(0) ? S(-x) : x;
}

/// Exact equality on the rational backend, |a-b| <= tol * max(1,|a|,|b|) on float.
template <Scalar S>
bool nearly_equal(const S& a, const S& b, double rel_tol) {
  if constexpr (scalar_traits<S>::exact) {
    return a == b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel_tol * scale;
  }
}

template <Scalar S>
struct Complex {
  S re{0};
  S im{0};

  Complex() = default;
  Complex(S r) : re(std::move(r)) {}  // NOLINT: real scalars promote implicitly
  Complex(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator*=(const S& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {S(-a.re), S(-a.im)}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {S(a.re * b.re - a.im * b.im), S(a.re * b.im + a.im * b.re)};
  }
  friend Complex operator*(Complex a, const S& s) { return a *= s; }
  friend Complex operator*(const S& s, Complex a) { return a *= s; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const S d = b.re * b.re + b.im * b.im;
    return {S((a.re * b.re + a.im * b.im) / d), S((a.im * b.re - a.re * b.im) / d)};
  }
  friend Complex operator/(const Complex& a, const S& s) { return {S(a.re / s), S(a.im / s)}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

/// Squared modulus; exact on the rational backend.
template <Scalar S>
S norm(const Complex<S>& z) {
  return z.re * z.re + z.im * z.im;
}

template <Scalar S>
Complex<S> conj(const Complex<S>& z) {
  return {z.re, S(-z.im)};
}

template <Scalar S>
Complex<double> to_double(const Complex<S>& z) {
  return {to_double(z.re), to_double(z.im)};
}

/// Modulus as a double (irrational in general on the rational backend).
template <Scalar S>
double abs(const Complex<S>& z) {
  return std::hypot(to_double(z.re), to_double(z.im));
}

/// Modulus in the backend's scalar: exact when z is real or purely imaginary,
/// otherwise the nearest double.
template <Scalar S>
S modulus(const Complex<S>& z) {
  if constexpr (scalar_traits<S>::exact) {
    if (z.im == 0) return abs_scalar(z.re);
    if (z.re == 0) return abs_scalar(z.im);
    return scalar_traits<S>::from_double(abs(z));
  } else {
    return std::hypot(z.re, z.im);
  }
}

inline Complex<double> polar_unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace coefbound
