#pragma once

// Coefficient machinery of the class T_n^alpha(beta): normalized f with
//   Re D^n(f^alpha) / (alpha^n z^alpha) > beta   on the unit disk.
//
// Every such f comes from a Caratheodory generator p through
//   f(z) = z (beta + (1 - beta) p_n(z))^(1/alpha),
// where p_n is the n-th iterated integral transform of p.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coefbound/caratheodory.hpp"
#include "coefbound/series.hpp"

namespace coefbound {

template <Scalar S>
struct ClassParams {
  int n = 0;
  S alpha = S(1);
  S beta = S(0);

  void validate() const {
    if (n < 0) throw usage_error("class parameter n must be >= 0");
    if (!(S(0) < alpha)) throw domain_error("class parameter alpha must be > 0, got " + format_scalar(alpha));
    if (beta < S(0) || !(beta < S(1)))
      throw domain_error("class parameter beta must lie in [0, 1), got " + format_scalar(beta));
  }

  TransformParams<S> transform() const { return {n, alpha}; }
};

enum class RegionTag { Omega1, Omega2, Omega3, OutOfTheorem1Range };
enum class BoundSource { Theorem1, Theorem2, Theorem3 };

std::string_view to_string(RegionTag tag);
std::string_view to_string(BoundSource source);

namespace detail {

inline void require_index(int k, int lowest, const char* op) {
  if (k < lowest)
    throw usage_error(std::string(op) + ": coefficient index must be >= " + std::to_string(lowest) + ", got " +
                      std::to_string(k));
}

// prod_{j=0}^{m-1} (1 - j alpha) / m!, the binomial coefficient C(1/alpha, m) times alpha^m
template <Scalar S>
S falling_product(const S& alpha, int m) {
  S r(1);
  for (int j = 0; j < m; ++j) r = r * (S(1) - S(j) * alpha) / S(j + 1);
  return r;
}

// pads or trims p to the requested order (padding only allowed by one step,
// since the top coefficient of p never reaches f)
template <Scalar S>
TruncatedSeries<S> generator_at_order(const TruncatedSeries<S>& p, int order) {
  if (p.order() < order - 1)
    throw usage_error("generator series order " + std::to_string(p.order()) + " too small for f of order " +
                      std::to_string(order));
  return truncate(p, order);
}

}  // namespace detail

// --- reconstruction of f -----------------------------------------------------

/// f = z (beta + (1 - beta) p_n)^(1/alpha), with f_0 = 0 and f_1 = 1.
template <Scalar S>
TruncatedSeries<S> f_from_p(const TruncatedSeries<S>& p, const ClassParams<S>& params, int order) {
  params.validate();
  if (order < 1) throw usage_error("f_from_p: order must be >= 1");
  const TruncatedSeries<S> p_order = detail::generator_at_order(p, order);
  const TruncatedSeries<S> base = shift_to_beta(iterated_transform(p_order, params.transform()), params.beta);
  return shift_up(real_power(base, S(S(1) / params.alpha)));
}

template <Scalar S>
TruncatedSeries<S> f_from_p(const HerglotzAtoms<S>& p, const ClassParams<S>& params, int order) {
  return f_from_p(herglotz_series(p, order), params, order);
}

/// a_k = sum_{m=1}^{k-1} Bt_m C^(m)_{k-1}, where C^(m) are the coefficients of
/// (sum_j b_j z^j / (alpha + j)^n)^m and
///   Bt_m = (1-beta)^m alpha^(m(n-1)) prod_{j<m}(1 - j alpha) / m!.
template <Scalar S>
Complex<S> a_k_direct(const TruncatedSeries<S>& p, const ClassParams<S>& params, int k) {
  params.validate();
  detail::require_index(k, 2, "a_k_direct");
  const int top = k - 1;
  if (p.order() < top) throw usage_error("a_k_direct: generator order must be >= k - 1");

  TruncatedSeries<S> weighted(top);
  for (int j = 1; j <= top; ++j) weighted[j] = p[j] / ipow(S(params.alpha + S(j)), params.n);

  const S one_minus_beta = S(1) - params.beta;
  Complex<S> a_k;
  for (int m = 1; m <= top; ++m) {
    const S b_tilde = ipow(one_minus_beta, m) * ipow(params.alpha, m * (params.n - 1)) *
                      detail::falling_product(params.alpha, m);
    a_k += integer_power(weighted, m)[top] * b_tilde;
  }
  return a_k;
}

/// min over |z| = radius of Re D^n(f^alpha)/(alpha^n z^alpha), minus beta.
///
/// z^alpha is handled formally: with (f/z)^alpha = sum e_k z^k, the normalized
/// quotient has coefficients ((alpha + k)/alpha)^n e_k.
template <Scalar S>
double verify_membership(const TruncatedSeries<S>& f, const ClassParams<S>& params, double radius, int samples) {
  params.validate();
  if (f.order() < 1 || !(f[0] == Complex<S>{}) || !(f[1] == Complex<S>(S(1))))
    throw domain_error("verify_membership: f must be normalized (f_0 = 0, f_1 = 1)");
  const TruncatedSeries<S> f_over_z = truncate(shift_down(f), f.order() - 1);
  TruncatedSeries<S> quotient = real_power(f_over_z, params.alpha);
  for (int k = 1; k <= quotient.order(); ++k)
    quotient[k] = quotient[k] * ipow(S((params.alpha + S(k)) / params.alpha), params.n);
  return min_real_part(quotient, radius, samples) - to_double(params.beta);
}

// --- bounds ------------------------------------------------------------------

/// 2 (1 - beta) alpha^(n-1) / (alpha + k - 1)^n. Sharp for alpha > 1.
template <Scalar S>
S sharp_bound(const ClassParams<S>& params, int k) {
  params.validate();
  detail::require_index(k, 2, "sharp_bound");
  return S(2) * (S(1) - params.beta) * ipow(params.alpha, params.n - 1) /
         ipow(S(params.alpha + S(k - 1)), params.n);
}

/// Omega_1 = {alpha < 1/(k-2)}, Omega_2 = {1/(k-2) <= alpha <= 1/(k-3), k even},
/// Omega_3 = {1/(k-2) <= alpha < 1/(k-3), k odd}; 1/0 reads as +infinity.
template <Scalar S>
RegionTag classify_region(const S& alpha, int k) {
  detail::require_index(k, 2, "classify_region");
  if (!(S(0) < alpha)) throw domain_error("classify_region: alpha must be > 0");
  if (k == 2) return RegionTag::Omega1;
  // alpha < 1/(k-2)  <=>  alpha (k-2) < 1, with no division
  if (alpha * S(k - 2) < S(1)) return RegionTag::Omega1;
  if (k == 3) return RegionTag::Omega3;
  const S scaled = alpha * S(k - 3);
  if (k % 2 == 0) return scaled <= S(1) ? RegionTag::Omega2 : RegionTag::OutOfTheorem1Range;
  return scaled < S(1) ? RegionTag::Omega3 : RegionTag::OutOfTheorem1Range;
}

template <Scalar S>
struct Theorem1Bound {
  std::optional<S> value;  // empty outside Omega_1, Omega_2, Omega_3
  RegionTag region;
};

/// A_k = sum_{m=1}^{k-1} B_m Q^(m)_{k-1} on Omega_1 and Omega_2, and the same
/// sum stopped at m = k-2 on Omega_3, with
///   B_m = 2^m (1-beta)^m alpha^(m(n-1)) prod_{j<m}(1 - j alpha) / m!
/// and Q^(m) the coefficients of (sum_{j>=1} z^j / (alpha + j)^n)^m.
template <Scalar S>
Theorem1Bound<S> theorem1_bound(const ClassParams<S>& params, int k) {
  params.validate();
  const RegionTag region = classify_region(params.alpha, k);
  if (region == RegionTag::OutOfTheorem1Range) return {std::nullopt, region};

  const int top = k - 1;
  TruncatedSeries<S> base(top);
  for (int j = 1; j <= top; ++j) base[j] = Complex<S>(S(S(1) / ipow(S(params.alpha + S(j)), params.n)));

  const int last_m = region == RegionTag::Omega3 ? k - 2 : k - 1;
  const S two_one_minus_beta = S(2) * (S(1) - params.beta);
  S total(0);
  for (int m = 1; m <= last_m; ++m) {
    const S b_m = ipow(two_one_minus_beta, m) * ipow(params.alpha, m * (params.n - 1)) *
                  detail::falling_product(params.alpha, m);
    total += b_m * integer_power(base, m)[top].re;
  }
  return {total, region};
}

/// exp{0.624 alpha^2 + (2 alpha^2 - 1/2) H_k}, H_k the k-th harmonic number.
/// Bounds the coefficients A_{k+1}(alpha) of f^alpha / z^alpha.
double theorem2_estimate(double alpha, int k);

// --- extremal generators -------------------------------------------------------

/// 1 + 2 sum_{j>=1} z^{j(k-1)}: the generator attaining the sharp bound at a_k.
template <Scalar S>
TruncatedSeries<S> extremal_series(int k, int order) {
  detail::require_index(k, 2, "extremal_series");
  TruncatedSeries<S> r(order);
  r[0] = Complex<S>(S(1));
  for (int j = k - 1; j <= order; j += k - 1) r[j] = Complex<S>(S(2));
  return r;
}

/// Equal weights on the (k-1)-th roots of unity. On the rational backend only
/// k - 1 in {1, 2, 4} has rational roots.
template <Scalar S>
HerglotzAtoms<S> extremal_p(int k) {
  detail::require_index(k, 2, "extremal_p");
  const int count = k - 1;
  const S weight = S(1) / S(count);
  std::vector<HerglotzAtom<S>> atoms;
  if constexpr (scalar_traits<S>::exact) {
    if (count != 1 && count != 2 && count != 4)
      throw domain_error("extremal_p: (k-1)-th roots of unity are not rational for k = " + std::to_string(k));
    const Complex<S> unit_i(S(0), S(1));
    Complex<S> x(S(1));
    const Complex<S> step = count == 1 ? Complex<S>(S(1)) : count == 2 ? Complex<S>(S(-1)) : unit_i;
    for (int j = 0; j < count; ++j) {
      atoms.push_back(atom_at(weight, x));
      x = x * step;
    }
  } else {
    for (int j = 0; j < count; ++j) atoms.push_back(atom_from_angle(weight, 2.0 * std::numbers::pi * j / count));
  }
  return HerglotzAtoms<S>(std::move(atoms));
}

// --- gamma scheme and h_k --------------------------------------------------------

/// gamma_{m-1} = prod_{j=1}^{m-1}(j alpha - 1) / (m! alpha^(m-1)); gamma_0 = 1.
template <Scalar S>
S gamma_target(int m, const S& alpha) {
  detail::require_index(m, 1, "gamma_target");
  if (!(S(0) < alpha)) throw domain_error("gamma_target: alpha must be > 0");
  S r(1);
  for (int j = 1; j <= m - 1; ++j) r = r * (S(j) * alpha - S(1)) / (S(j + 1) * alpha);
  return r;
}

/// gamma_m = 2^-m [1 + (1/2) sum_{mu=1}^m C(m, mu) d_mu] for m = 0..count-1.
/// d is indexed by mu (d[0] is ignored); entries past d.size() read as zero.
/// V is S for a real scheme or Complex<S> for a general h.
template <Scalar S, class V>
std::vector<V> gamma_sequence(const std::vector<V>& d, int count) {
  std::vector<V> gammas;
  gammas.reserve(count);
  const S half = S(1) / S(2);
  S power_of_half(1);
  for (int m = 0; m < count; ++m) {
    V acc = V(S(0));
    S binom(1);
    for (int mu = 1; mu <= m; ++mu) {
      binom = binom * S(m - mu + 1) / S(mu);
      if (mu < static_cast<int>(d.size())) acc += d[mu] * binom;
    }
    gammas.push_back((V(S(1)) + acc * half) * power_of_half);
    power_of_half *= half;
  }
  return gammas;
}

/// eta_m = (1 - beta) alpha^n gamma_m / (alpha + m)^n; eta_0 = 1 - beta when gamma_0 = 1.
template <Scalar S, class V>
std::vector<V> eta_sequence(const std::vector<V>& gammas, const ClassParams<S>& params) {
  std::vector<V> etas;
  etas.reserve(gammas.size());
  const S one_minus_beta = S(1) - params.beta;
  for (std::size_t m = 0; m < gammas.size(); ++m) {
    const S factor = one_minus_beta * ipow(S(params.alpha / (params.alpha + S(static_cast<int>(m)))), params.n);
    etas.push_back(gammas[m] * factor);
  }
  return etas;
}

template <Scalar S>
struct GammaScheme {
  int k = 2;
  std::vector<S> gammas;  // gamma_0 .. gamma_{k-2}, from d by the gamma_m rule
  std::vector<S> etas;    // eta_0 .. eta_{k-2}
  std::vector<S> d;       // d[mu] for mu = 1 .. k-2; d[0] unused
  S sigma = S(0);         // the coefficient solved from the m = k-1 relation
  int xi = 0;             // largest even index carrying sigma (k >= 6 recipe)
  int omega = 0;          // largest odd index set to zero (k >= 6 recipe)

  int m_max() const { return k - 1; }
};

template <Scalar S>
struct HkConstruction {
  TruncatedSeries<S> series;
  GammaScheme<S> scheme;
  /// Convex weights of the Caratheodory pieces the series is assembled from.
  std::vector<S> convex_weights;
};

namespace detail {

// (1 + z^q)/(1 - z^q) scaled by c >= 0, or (1 - z^q)/(1 + z^q) scaled by -c
// when c < 0; either way the z^q coefficient is 2c.
template <Scalar S>
void add_power_kernel(TruncatedSeries<S>& h, int q, const S& c) {
  const bool alternate = c < S(0);
  int sign = 1;
  for (int j = q; j <= h.order(); j += q) {
    h[j] += Complex<S>(S(S(2) * c * S(sign)));
    if (alternate) sign = -sign;
  }
}

inline int recipe_xi(int m) { return (m - 1) % 2 == 0 ? m - 1 : m - 2; }
inline int recipe_omega(int m) { return (m - 1) % 2 == 1 ? m - 1 : m - 2; }

template <Scalar S>
S even_binomial_sum(int top, int xi) {
  S total(0);
  for (int mu = 2; mu <= xi; mu += 2) {
    S binom(1);
    for (int i = 1; i <= mu; ++i) binom = binom * S(top - mu + i) / S(i);
    total += binom;
  }
  return total;
}

}  // namespace detail

/// sigma/2 of the k >= 6 recipe: 2^(k-2) prod_{j=1}^{k-2}((j alpha - 1)/(j alpha))
/// / ((k-1)(C(k-2,2) + C(k-2,4) + ... + C(k-2,xi))).
template <Scalar S>
S hk_half_sigma(int k, const S& alpha) {
  const int m = k - 1;
  S prod(1);
  for (int j = 1; j <= m - 1; ++j) prod = prod * (S(j) * alpha - S(1)) / (S(j) * alpha);
  return ipow(S(2), m - 1) * prod / (S(m) * detail::even_binomial_sum<S>(m - 1, detail::recipe_xi(m)));
}

/// h(z)_k and its gamma scheme for alpha > 1.
///
///   k = 2: h = 1.
///   k = 3: h = (alpha-1)/alpha + (1/alpha)(1-z)/(1+z), d_1 = -2/alpha.
///   k = 4: d_1 = 0, d_2/2 = (alpha^2 - 6 alpha + 2)/(3 alpha^2).
///   k = 5: d_1 = d_2 = 0, d_3/2 = (3 alpha^3 - 11 alpha^2 + 6 alpha - 1)/(3 alpha^3).
///   k >= 6: d_1 = -2/(k-2), even d's = sigma, odd d's past 1 zero.
///
/// For k = 4, 5 the kernel in z^{k-2} is (1+w)/(1-w) or (1-w)/(1+w) depending
/// on the sign of the solved coefficient; the two choices agree through z^{k-2}
/// and only the matching one has positive real part.
template <Scalar S>
HkConstruction<S> build_hk(int k, const ClassParams<S>& params, int order) {
  params.validate();
  detail::require_index(k, 2, "build_hk");
  const S& alpha = params.alpha;
  if (!(S(1) < alpha)) throw domain_error("build_hk: alpha must be > 1, got " + format_scalar(alpha));
  if (order < k) throw usage_error("build_hk: order must be >= k");

  GammaScheme<S> scheme;
  scheme.k = k;
  const int m = k - 1;
  scheme.d.assign(m, S(0));
  scheme.xi = detail::recipe_xi(m);
  scheme.omega = detail::recipe_omega(m);

  TruncatedSeries<S> h(order);
  h[0] = Complex<S>(S(1));
  std::vector<S> weights;

  if (k == 2) {
    weights = {S(1)};
  } else if (k == 3) {
    const S c = S(-1) / alpha;  // (1/alpha)(1-z)/(1+z)
    detail::add_power_kernel(h, 1, c);
    scheme.d[1] = S(-2) / alpha;
    scheme.sigma = scheme.d[1];
    weights = {S((alpha - S(1)) / alpha), S(S(1) / alpha)};
  } else if (k == 4 || k == 5) {
    const int q = k - 2;
    const S c = k == 4 ? S((alpha * alpha - S(6) * alpha + S(2)) / (S(3) * alpha * alpha))
                       : S((S(3) * ipow(alpha, 3) - S(11) * alpha * alpha + S(6) * alpha - S(1)) /
                           (S(3) * ipow(alpha, 3)));
    detail::add_power_kernel(h, q, c);
    scheme.d[q] = S(2) * c;
    scheme.sigma = scheme.d[q];
    weights = c < S(0) ? std::vector<S>{S(S(1) + c), S(-c)} : std::vector<S>{S(S(1) - c), c};
  } else {
    const S d1 = S(-2) / S(k - 2);
    const S s = hk_half_sigma(k, alpha);
    const S sigma = S(2) * s;
    h[1] += Complex<S>(d1);  // (2/(k-2)) (1 - z)
    detail::add_power_kernel(h, 2, s);
    scheme.d[1] = d1;
    for (int mu = 2; mu <= scheme.xi; mu += 2) scheme.d[mu] = sigma;
    scheme.sigma = sigma;
    weights = {S(S(1) - S(2) / S(k - 2) - s), S(S(2) / S(k - 2)), s};
  }

  scheme.gammas = gamma_sequence<S>(scheme.d, m);
  scheme.etas = eta_sequence(scheme.gammas, params);
  return {std::move(h), std::move(scheme), std::move(weights)};
}

template <Scalar S>
HkConstruction<S> build_hk(int k, const S& alpha, int order) {
  return build_hk(k, ClassParams<S>{0, alpha, S(0)}, order);
}

/// Residual of 2^-(m-1)[1 + (1/2) sum_{mu<m} C(m-1, mu) d_mu] - gamma_target(m)
/// for m = 1..k-1 (entry m-1).
template <Scalar S>
std::vector<S> gamma_residuals(const GammaScheme<S>& scheme, const S& alpha) {
  const std::vector<S> lhs = gamma_sequence<S>(scheme.d, scheme.m_max());
  std::vector<S> residuals;
  for (int m = 1; m <= scheme.m_max(); ++m) residuals.push_back(lhs[m - 1] - gamma_target(m, alpha));
  return residuals;
}

/// The h_k relation holds at m = k-1, the index the d's are solved from:
/// exactly on the rational backend, within tol on float.
template <Scalar S>
bool check_eq24(const GammaScheme<S>& scheme, const S& alpha, double tol = 1e-12) {
  const S r = gamma_residuals(scheme, alpha).back();
  if constexpr (scalar_traits<S>::exact)
    return r == S(0);
  else
    return std::abs(r) <= tol;
}

/// sum_{m>=1} (-1)^{m+1} eta_{m-1} G^m, with gamma_m taken from h's
/// coefficients and eta_m = (1-beta) alpha^n gamma_m / (alpha + m)^n.
template <Scalar S>
TruncatedSeries<S> nehari_series(const TruncatedSeries<S>& h, const TruncatedSeries<S>& g,
                                 const ClassParams<S>& params, int order) {
  params.validate();
  if (!(g[0] == Complex<S>{})) throw domain_error("nehari_series: G must vanish at 0");
  if (!(h[0] == Complex<S>(S(1)))) throw domain_error("nehari_series: h must have constant term 1");
  if (g.order() < order || h.order() < order - 1) throw usage_error("nehari_series: inputs shorter than order");
  if (order < 1) return TruncatedSeries<S>(order);

  const TruncatedSeries<S> gg = truncate(g, order);
  std::vector<Complex<S>> d(h.coeffs().begin(), h.coeffs().begin() + order);
  const auto etas = eta_sequence(gamma_sequence<S>(d, order), params);

  // Horner in G: A = G (eta_0 - G (eta_1 - G (... eta_{N-1})))
  TruncatedSeries<S> acc = TruncatedSeries<S>::constant(etas[order - 1], order);
  for (int m = order - 2; m >= 0; --m)
    acc = sub(TruncatedSeries<S>::constant(etas[m], order), mul(gg, acc));
  return mul(gg, acc);
}

/// 2 (1-beta) alpha^n / (alpha + k)^n, the bound claimed for the nehari_series coefficients.
template <Scalar S>
S nehari_bound(const ClassParams<S>& params, int k) {
  return S(2) * (S(1) - params.beta) * ipow(S(params.alpha / (params.alpha + S(k))), params.n);
}

// --- reports -----------------------------------------------------------------

template <Scalar S>
struct BoundReport {
  int k = 0;
  S a_k_abs;  // |a_k|; |A_k(alpha)| when bound_source is Theorem2
  S bound;
  BoundSource bound_source = BoundSource::Theorem3;
  RegionTag region = RegionTag::Omega1;
  S margin;  // bound - a_k_abs
  bool sharp_hit = false;
};

/// Per-coefficient report for k = 2..k_max. The sharp bound applies for
/// alpha > 1, theorem1_bound inside its regions, and otherwise the coefficient
/// of z^{k-1} in f^alpha / z^alpha is compared against theorem2_estimate.
template <Scalar S>
std::vector<BoundReport<S>> bound_reports(const TruncatedSeries<S>& f, const ClassParams<S>& params, int k_max,
                                          double rel_tol = 1e-10) {
  params.validate();
  if (k_max > f.order()) throw usage_error("bound_reports: k_max exceeds series order");
  std::optional<TruncatedSeries<S>> power_quotient;
  std::vector<BoundReport<S>> reports;
  for (int k = 2; k <= k_max; ++k) {
    BoundReport<S> r;
    r.k = k;
    r.region = classify_region(params.alpha, k);
    Complex<S> value = f[k];
    if (S(1) < params.alpha) {
      r.bound_source = BoundSource::Theorem3;
      r.bound = sharp_bound(params, k);
    } else if (auto t1 = theorem1_bound(params, k); t1.value) {
      r.bound_source = BoundSource::Theorem1;
      r.bound = *t1.value;
    } else {
      if (!power_quotient) power_quotient = real_power(truncate(shift_down(f), f.order() - 1), params.alpha);
      r.bound_source = BoundSource::Theorem2;
      r.bound = scalar_traits<S>::from_double(theorem2_estimate(to_double(params.alpha), k - 1));
      value = (*power_quotient)[k - 1];
    }
    r.a_k_abs = modulus(value);
    r.margin = r.bound - r.a_k_abs;
    if constexpr (scalar_traits<S>::exact)
      r.sharp_hit = norm(value) == r.bound * r.bound;
    else
      r.sharp_hit = std::abs(r.margin) <= rel_tol * std::max(1e-300, std::abs(r.bound));
    reports.push_back(r);
  }
  return reports;
}

}  // namespace coefbound
