#pragma once

// Truncated formal power series c_0 + c_1 z + ... + c_N z^N over Complex<S>.
//
// Every operation closes over the order N of its operands: products are
// truncated, never extended, and mixing orders is a usage error.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coefbound/scalar.hpp"

namespace coefbound {

inline constexpr int default_order = 64;

template <Scalar S>
class TruncatedSeries {
 public:
  using scalar_type = S;
  using value_type = Complex<S>;

  /// The zero series of the given order.
  explicit TruncatedSeries(int order) : coeffs_(checked_length(order)) {}

  /// Pads with zeros or drops coefficients beyond the order.
  TruncatedSeries(std::vector<value_type> coeffs, int order) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(checked_length(order));
  }

  static TruncatedSeries constant(const value_type& c, int order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  static TruncatedSeries monomial(int power, const value_type& c, int order) {
    TruncatedSeries s(order);
    if (power < 0) throw usage_error("negative monomial power");
    if (power <= order) s.coeffs_[power] = c;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const value_type& operator[](int k) const { return coeffs_[k]; }
  value_type& operator[](int k) { return coeffs_[k]; }

  /// Coefficient k, or zero past the truncation order.
  value_type coeff(int k) const { return (k >= 0 && k <= order()) ? coeffs_[k] : value_type{}; }

  std::span<const value_type> coeffs() const { return coeffs_; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  static std::size_t checked_length(int order) {
    if (order < 0) throw usage_error("series order must be >= 0, got " + std::to_string(order));
    return static_cast<std::size_t>(order) + 1;
  }

  std::vector<value_type> coeffs_;
};

namespace detail {

template <Scalar S>
void require_same_order(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b, const char* op) {
  if (a.order() != b.order())
    throw usage_error(std::string(op) + ": mismatched orders " + std::to_string(a.order()) + " and " +
                      std::to_string(b.order()));
}

// index of the first nonzero coefficient (order+1 for the zero series)
template <Scalar S>
int valuation(const TruncatedSeries<S>& a) {
  int v = 0;
  while (v <= a.order() && a[v] == Complex<S>{}) ++v;
  return v;
}

}  // namespace detail

template <Scalar S>
TruncatedSeries<S> make_series(std::vector<Complex<S>> coeffs, int order) {
  return TruncatedSeries<S>(std::move(coeffs), order);
}

template <Scalar S>
TruncatedSeries<S> add(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  detail::require_same_order(a, b, "add");
  TruncatedSeries<S> r = a;
  for (int k = 0; k <= r.order(); ++k) r[k] += b[k];
  return r;
}

template <Scalar S>
TruncatedSeries<S> sub(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  detail::require_same_order(a, b, "sub");
  TruncatedSeries<S> r = a;
  for (int k = 0; k <= r.order(); ++k) r[k] -= b[k];
  return r;
}

template <Scalar S>
TruncatedSeries<S> scale(const TruncatedSeries<S>& a, const Complex<S>& lambda) {
  TruncatedSeries<S> r = a;
  for (int k = 0; k <= r.order(); ++k) r[k] = r[k] * lambda;
  return r;
}

/// Cauchy product truncated at the common order.
template <Scalar S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  detail::require_same_order(a, b, "mul");
  const int n = a.order();
  const int va = detail::valuation(a);
  const int vb = detail::valuation(b);
  TruncatedSeries<S> r(n);
  for (int k = va + vb; k <= n; ++k) {
    Complex<S> acc;
    for (int j = va; j <= k - vb; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

template <Scalar S>
TruncatedSeries<S> operator+(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return add(a, b);
}
template <Scalar S>
TruncatedSeries<S> operator-(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return sub(a, b);
}
template <Scalar S>
TruncatedSeries<S> operator*(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  return mul(a, b);
}
template <Scalar S>
TruncatedSeries<S> operator*(const Complex<S>& lambda, const TruncatedSeries<S>& a) {
  return scale(a, lambda);
}

/// g^m by the integer-product recursion c^(m)_k = sum_j c_j c^(m-1)_{k-j}.
/// m = 0 gives the constant 1.
template <Scalar S>
TruncatedSeries<S> integer_power(const TruncatedSeries<S>& g, int m) {
  if (m < 0) throw usage_error("integer_power: negative exponent " + std::to_string(m));
  const int n = g.order();
  if (m == 0) return TruncatedSeries<S>::constant(Complex<S>(S(1)), n);
  const int v = detail::valuation(g);
  TruncatedSeries<S> power = g;  // c^(1) = c
  for (int level = 2; level <= m; ++level) {
    TruncatedSeries<S> next(n);
    // c^(level-1) vanishes below (level-1) v, so c^(level) below level v
    for (int k = level * v; k <= n; ++k) {
      Complex<S> acc;
      for (int j = v; j <= k - (level - 1) * v; ++j) acc += g[j] * power[k - j];
      next[k] = acc;
    }
    power = std::move(next);
  }
  return power;
}

/// g^c for a real exponent c, principal branch fixed by g_0 = 1.
///
/// Uses u_0 = 1, k u_k = sum_{j=1..k} (j c - (k - j)) g_j u_{k-j}, which is the
/// coefficient form of g u' = c g' u.
template <Scalar S>
TruncatedSeries<S> real_power(const TruncatedSeries<S>& g, const S& c) {
  if (!(g[0] == Complex<S>(S(1))))
    throw domain_error("real_power: constant term must be exactly 1");
  const int n = g.order();
  TruncatedSeries<S> u(n);
  u[0] = Complex<S>(S(1));
  for (int k = 1; k <= n; ++k) {
    Complex<S> acc;
    for (int j = 1; j <= k; ++j) {
      const S weight = S(j) * c - S(k - j);
      acc += (g[j] * u[k - j]) * weight;
    }
    u[k] = acc / S(k);
  }
  return u;
}

/// g^c through the binomial expansion sum_m C(c, m) (g - 1)^m, each power
/// taken with integer_power. O(N^3); the reference route for real_power.
template <Scalar S>
TruncatedSeries<S> binomial_power(const TruncatedSeries<S>& g, const S& c) {
  if (!(g[0] == Complex<S>(S(1))))
    throw domain_error("binomial_power: constant term must be exactly 1");
  const int n = g.order();
  TruncatedSeries<S> w = g;
  w[0] = Complex<S>{};
  TruncatedSeries<S> result = TruncatedSeries<S>::constant(Complex<S>(S(1)), n);
  S binom(1);
  for (int m = 1; m <= n; ++m) {
    binom = binom * (c - S(m - 1)) / S(m);
    result = add(result, scale(integer_power(w, m), Complex<S>(binom)));
  }
  return result;
}

/// Salagean operator D^n: (z d/dz)^n, i.e. c_k -> k^n c_k.
template <Scalar S>
TruncatedSeries<S> salagean(const TruncatedSeries<S>& f, int n) {
  if (n < 0) throw usage_error("salagean: negative iteration count " + std::to_string(n));
  TruncatedSeries<S> r = f;
  for (int k = 0; k <= r.order(); ++k) r[k] = r[k] * ipow(S(k), n);
  return r;
}

/// Horner evaluation of the truncated sum.
template <Scalar S>
Complex<S> evaluate(const TruncatedSeries<S>& f, const Complex<S>& z) {
  Complex<S> acc;
  for (int k = f.order(); k >= 0; --k) acc = acc * z + f[k];
  return acc;
}

/// Complex<double> evaluation of any backend's series.
template <Scalar S>
Complex<double> evaluate_double(const TruncatedSeries<S>& f, const Complex<double>& z) {
  Complex<double> acc;
  for (int k = f.order(); k >= 0; --k) acc = acc * z + to_double(f[k]);
  return acc;
}

/// Multiplies by z (drops the top coefficient).
template <Scalar S>
TruncatedSeries<S> shift_up(const TruncatedSeries<S>& f) {
  TruncatedSeries<S> r(f.order());
  for (int k = f.order(); k >= 1; --k) r[k] = f[k - 1];
  return r;
}

/// Divides by z; requires f_0 = 0. The vacated top coefficient is zero, so
/// callers that need it exact must carry one extra order.
template <Scalar S>
TruncatedSeries<S> shift_down(const TruncatedSeries<S>& f) {
  if (!(f[0] == Complex<S>{})) throw domain_error("shift_down: constant term must be 0");
  TruncatedSeries<S> r(f.order());
  for (int k = 0; k < f.order(); ++k) r[k] = f[k + 1];
  return r;
}

template <Scalar S>
TruncatedSeries<S> truncate(const TruncatedSeries<S>& f, int order) {
  std::vector<Complex<S>> c(f.coeffs().begin(), f.coeffs().end());
  return TruncatedSeries<S>(std::move(c), order);
}

template <Scalar S>
TruncatedSeries<double> to_double(const TruncatedSeries<S>& f) {
  TruncatedSeries<double> r(f.order());
  for (int k = 0; k <= f.order(); ++k) r[k] = to_double(f[k]);
  return r;
}

}  // namespace coefbound
