#pragma once

// Constructive Caratheodory functions: p(0) = 1, Re p > 0 on the unit disk.
//
// A member is represented by finitely many Herglotz atoms,
//   p(z) = sum_j w_j (1 + x_j z) / (1 - x_j z),   w_j >= 0, sum w_j = 1, |x_j| = 1,
// whose series is 1 + sum_k (2 sum_j w_j x_j^k) z^k.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "coefbound/series.hpp"

namespace coefbound {

template <Scalar S>
struct HerglotzAtom {
  S weight;
  Complex<S> point;
  /// Argument of the point. Exact source of truth for float atoms built from
  /// an angle; informational otherwise.
  double angle = 0.0;
};

template <Scalar S>
bool is_unimodular(const Complex<S>& x) {
  if constexpr (scalar_traits<S>::exact) {
    return norm(x) == S(1);
  } else {
    return std::abs(std::hypot(x.re, x.im) - 1.0) <= scalar_traits<S>::unit_tol;
  }
}

/// x = ((1 - t^2) + 2 t i) / (1 + t^2): a rational point on the circle for
/// every rational t (t = tan of half the angle).
template <Scalar S>
Complex<S> unit_from_slope(const S& t) {
  const S d = S(1) + t * t;
  return {S((S(1) - t * t) / d), S(S(2) * t / d)};
}

/// Inverse of unit_from_slope; throws for x = -1 (t at infinity).
template <Scalar S>
S slope_from_unit(const Complex<S>& x) {
  if (x.re == S(-1) && x.im == S(0)) throw domain_error("slope_from_unit: x = -1 has no finite slope");
  return x.im / (S(1) + x.re);
}

template <Scalar S>
HerglotzAtom<S> atom_from_angle(const S& weight, double angle)
  requires(!scalar_traits<S>::exact)
{
  return {weight, polar_unit(angle), angle};
}

template <Scalar S>
HerglotzAtom<S> atom_at(const S& weight, const Complex<S>& point) {
  const Complex<double> xd = to_double(point);
  return {weight, point, std::atan2(xd.im, xd.re)};
}

template <Scalar S>
class HerglotzAtoms {
 public:
  explicit HerglotzAtoms(std::vector<HerglotzAtom<S>> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw domain_error("HerglotzAtoms: at least one atom required");
    S total(0);
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      const auto& a = atoms_[j];
      if (a.weight < S(0)) throw domain_error("HerglotzAtoms: negative weight at atom " + std::to_string(j));
      if (!is_unimodular(a.point))
        throw domain_error("HerglotzAtoms: point of atom " + std::to_string(j) + " is not on the unit circle");
      total += a.weight;
    }
    bool normalized;
    if constexpr (scalar_traits<S>::exact)
      normalized = total == S(1);
    else
      normalized = std::abs(total - 1.0) <= scalar_traits<S>::unit_tol;
    if (!normalized)
      throw domain_error("HerglotzAtoms: weights sum to " + format_scalar(total) + ", expected 1");
  }

  std::span<const HerglotzAtom<S>> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<HerglotzAtom<S>> atoms_;
};

template <Scalar S>
struct TransformParams {
  int n = 0;
  S alpha = S(1);

  void validate() const {
    if (n < 0) throw usage_error("transform depth n must be >= 0");
    if (!(S(0) < alpha)) throw domain_error("transform alpha must be > 0, got " + format_scalar(alpha));
  }
};

/// Rotated Moebius kernel (1 + xz)/(1 - xz) = 1 + sum 2 x^k z^k.
template <Scalar S>
TruncatedSeries<S> kernel_series(const Complex<S>& x, int order) {
  if (!is_unimodular(x)) throw domain_error("kernel_series: |x| must be 1");
  TruncatedSeries<S> r(order);
  r[0] = Complex<S>(S(1));
  Complex<S> xk(S(1));
  for (int k = 1; k <= order; ++k) {
    xk = xk * x;
    r[k] = xk * S(2);
  }
  return r;
}

template <Scalar S>
TruncatedSeries<S> herglotz_series(const HerglotzAtoms<S>& p, int order) {
  TruncatedSeries<S> r(order);
  r[0] = Complex<S>(S(1));
  for (const auto& atom : p.atoms()) {
    const S w2 = S(2) * atom.weight;
    Complex<S> xk(S(1));
    for (int k = 1; k <= order; ++k) {
      xk = xk * atom.point;
      r[k] += xk * w2;
    }
  }
  return r;
}

/// 1 + (1/2) sum p_k q_k z^k; stays in P when p and q are.
template <Scalar S>
TruncatedSeries<S> half_hadamard(const TruncatedSeries<S>& p, const TruncatedSeries<S>& q) {
  detail::require_same_order(p, q, "half_hadamard");
  const Complex<S> one(S(1));
  if (!(p[0] == one) || !(q[0] == one)) throw domain_error("half_hadamard: constant terms must be 1");
  TruncatedSeries<S> r(p.order());
  r[0] = one;
  const S half = S(1) / S(2);
  for (int k = 1; k <= p.order(); ++k) r[k] = (p[k] * q[k]) * half;
  return r;
}

/// The n-th iterate of p -> (alpha / z^alpha) int_0^z t^(alpha-1) p(t) dt,
/// which maps b_k to (alpha / (alpha + k))^n b_k.
template <Scalar S>
TruncatedSeries<S> iterated_transform(const TruncatedSeries<S>& p, const TransformParams<S>& t) {
  t.validate();
  if (!(p[0] == Complex<S>(S(1)))) throw domain_error("iterated_transform: constant term must be 1");
  TruncatedSeries<S> r = p;
  for (int k = 1; k <= r.order(); ++k) r[k] = r[k] * ipow(S(t.alpha / (t.alpha + S(k))), t.n);
  return r;
}

/// beta + (1 - beta) p_n, with the constant term kept exactly 1.
template <Scalar S>
TruncatedSeries<S> shift_to_beta(const TruncatedSeries<S>& p_n, const S& beta) {
  if (beta < S(0) || !(beta < S(1))) throw domain_error("shift_to_beta: beta must lie in [0, 1)");
  if (!(p_n[0] == Complex<S>(S(1)))) throw domain_error("shift_to_beta: constant term must be 1");
  TruncatedSeries<S> r = p_n;
  const S tail = S(1) - beta;
  for (int k = 1; k <= r.order(); ++k) r[k] = r[k] * tail;
  return r;
}

/// Bound on |sum_{k>N} b_k z^k| for |b_k| <= 2 and |z| = r.
inline double truncation_tail_bound(double radius, int order) {
  return 2.0 * std::pow(radius, order + 1) / (1.0 - radius);
}

/// min_j Re p(r e^{2 pi i j / samples}).
template <Scalar S>
double min_real_part(const TruncatedSeries<S>& p, double radius, int samples) {
  if (!(radius > 0.0) || !(radius < 1.0)) throw usage_error("min_real_part: radius must lie in (0, 1)");
  if (samples < 8) throw usage_error("min_real_part: at least 8 samples required");
  const TruncatedSeries<double> pd = to_double(p);
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / samples;
    const Complex<double> z{radius * std::cos(theta), radius * std::sin(theta)};
    lowest = std::min(lowest, evaluate(pd, z).re);
  }
  return lowest;
}

/// Deterministic sample: atom count uniform in [1, max_atoms], points uniform
/// on the circle, weights uniform on the simplex. The rational backend snaps
/// each point to a Pythagorean point with slope denominator 1024 and draws
/// integer weights in [1, 2^20], normalized exactly.
template <Scalar S>
HerglotzAtoms<S> random_herglotz(std::uint64_t seed, int max_atoms);

template <>
HerglotzAtoms<double> random_herglotz<double>(std::uint64_t seed, int max_atoms);
template <>
HerglotzAtoms<Rational> random_herglotz<Rational>(std::uint64_t seed, int max_atoms);

}  // namespace coefbound
