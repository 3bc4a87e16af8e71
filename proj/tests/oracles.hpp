#pragma once

// Reference computations that share no code path with the library beyond the
// series container: schoolbook products, binomial expansions, and an
// iterated-quadrature evaluation of the integral transform.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "coefbound/caratheodory.hpp"
#include "coefbound/series.hpp"

namespace oracle {

using coefbound::Complex;
using coefbound::Rational;
using coefbound::TruncatedSeries;

// Full product of every coefficient pair, truncated afterwards.
template <class S>
TruncatedSeries<S> schoolbook_mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  const int n = a.order();
  std::vector<Complex<S>> full(2 * n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) full[i + j] = full[i + j] + a[i] * b[j];
  return TruncatedSeries<S>(std::move(full), n);
}

template <class S>
TruncatedSeries<S> repeated_mul(const TruncatedSeries<S>& g, int m) {
  auto r = TruncatedSeries<S>::constant(Complex<S>(S(1)), g.order());
  for (int i = 0; i < m; ++i) r = schoolbook_mul(r, g);
  return r;
}

// (1 + u)^c = sum_m C(c, m) u^m with u = g - 1, g_0 = 1.
template <class S>
TruncatedSeries<S> binomial_series_power(const TruncatedSeries<S>& g, const S& c) {
  const int n = g.order();
  TruncatedSeries<S> u = g;
  u[0] = Complex<S>{};
  TruncatedSeries<S> result = TruncatedSeries<S>::constant(Complex<S>(S(1)), n);
  TruncatedSeries<S> u_pow = result;
  S binom(1);
  for (int m = 1; m <= n; ++m) {
    binom = binom * (c - S(m - 1)) / S(m);
    u_pow = schoolbook_mul(u_pow, u);
    for (int k = 0; k <= n; ++k) result[k] = result[k] + u_pow[k] * binom;
  }
  return result;
}

inline std::vector<Complex<Rational>> random_rational_coeffs(std::mt19937_64& rng, int order, bool unit_constant) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Complex<Rational>> c(order + 1);
  for (auto& x : c) x = Complex<Rational>(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  if (unit_constant) c[0] = Complex<Rational>(Rational(1));
  return c;
}

// Gauss-Legendre nodes and weights on [0, 1] by Golub-Welsch.
struct GaussLegendre {
  std::vector<double> nodes, weights;

  explicit GaussLegendre(int count) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
    for (int i = 1; i < count; ++i) {
      const double b = i / std::sqrt(4.0 * i * i - 1.0);
      jacobi(i, i - 1) = jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    for (int i = 0; i < count; ++i) {
      const double v = solver.eigenvectors()(0, i);
      nodes.push_back(0.5 * (solver.eigenvalues()(i) + 1.0));
      weights.push_back(v * v);  // 2 v^2 on [-1, 1], halved for [0, 1]
    }
  }
};

// p_n(z) = alpha int_0^1 s^(alpha-1) p_{n-1}(s z) ds, with p_0 the Herglotz
// combination in closed form. s = u^2 makes the weight u^(2 alpha - 1), which is
// polynomial for the alphas the cross-check uses.
class TransformQuadrature {
 public:
  TransformQuadrature(std::vector<std::pair<double, std::complex<double>>> atoms, double alpha, int nodes = 64)
      : atoms_(std::move(atoms)), alpha_(alpha), rule_(nodes) {}

  std::complex<double> evaluate(std::complex<double> z, int n) const {
    if (n == 0) {
      std::complex<double> total = 0;
      for (const auto& [w, x] : atoms_) total += w * (1.0 + x * z) / (1.0 - x * z);
      return total;
    }
    std::complex<double> total = 0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      const double u = rule_.nodes[i];
      total += rule_.weights[i] * 2.0 * alpha_ * std::pow(u, 2.0 * alpha_ - 1.0) * evaluate(u * u * z, n - 1);
    }
    return total;
  }

  // Taylor coefficients 0..k_max by a discrete Fourier transform on |z| = radius.
  std::vector<std::complex<double>> coefficients(int n, int k_max, double radius = 0.75, int points = 128) const {
    std::vector<std::complex<double>> values(points);
    for (int j = 0; j < points; ++j)
      values[j] = evaluate(std::polar(radius, 2 * std::numbers::pi * j / points), n);
    std::vector<std::complex<double>> c(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
      std::complex<double> sum = 0;
      for (int j = 0; j < points; ++j) sum += values[j] * std::polar(1.0, -2 * std::numbers::pi * j * k / points);
      c[k] = sum / (points * std::pow(radius, k));
    }
    return c;
  }

 private:
  std::vector<std::pair<double, std::complex<double>>> atoms_;
  double alpha_;
  GaussLegendre rule_;
};

// Region membership by comparing alpha with the reciprocals in doubles.
inline const char* brute_region(double alpha, int k) {
  const double inf = std::numeric_limits<double>::infinity();
  const double lo = k == 2 ? inf : 1.0 / (k - 2);
  const double hi = k <= 3 ? inf : 1.0 / (k - 3);
  if (alpha < lo) return "Omega1";
  if (k % 2 == 0 && alpha <= hi) return "Omega2";
  if (k % 2 == 1 && alpha < hi) return "Omega3";
  return "OutOfTheorem1Range";
}

}  // namespace oracle
