#include <doctest.h>

#include "coefbound/series.hpp"
#include "oracles.hpp"

using namespace coefbound;

namespace {

using Q = Rational;
using CQ = Complex<Q>;

TruncatedSeries<Q> poly(std::initializer_list<int> c, int order) {
  std::vector<CQ> v;
  for (int x : c) v.emplace_back(Q(x));
  return TruncatedSeries<Q>(std::move(v), order);
}

TruncatedSeries<Q> random_series(std::mt19937_64& rng, int order, bool unit_constant = false) {
  return TruncatedSeries<Q>(oracle::random_rational_coeffs(rng, order, unit_constant), order);
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("construction pads and truncates") {
    CHECK(poly({1}, 3) == poly({1, 0, 0, 0}, 3));
    CHECK(poly({0, 1}, 2) == TruncatedSeries<Q>::monomial(1, CQ(Q(1)), 2));
    CHECK(poly({1, 2, 3, 4}, 2) == poly({1, 2, 3}, 2));
    CHECK_THROWS_AS(TruncatedSeries<Q>(-1), usage_error);
  }

  TEST_CASE("ring operations") {
    const auto z = poly({0, 1}, 4);
    CHECK(add(z, z) == poly({0, 2}, 4));
    CHECK(scale(poly({1, 1}, 4), CQ(Q(0))) == TruncatedSeries<Q>(4));
    CHECK(add(poly({1, 1}, 4), poly({1, -1}, 4)) == poly({2}, 4));
    CHECK(mul(poly({1, 1}, 4), poly({1, -1}, 4)) == poly({1, 0, -1}, 4));
    CHECK(mul(poly({0, 1}, 1), poly({0, 1}, 1)) == TruncatedSeries<Q>(1));
    CHECK_THROWS_AS(add(poly({1}, 2), poly({1}, 3)), usage_error);
  }

  TEST_CASE("mul matches the schoolbook oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int order = 1 + trial % 20;
      auto a = random_series(rng, order);
      auto b = random_series(rng, order);
      if (trial % 3 == 0) a[0] = CQ{};  // exercise the valuation shortcut
      CHECK(mul(a, b) == oracle::schoolbook_mul(a, b));
    }
  }

  TEST_CASE("ring axioms hold exactly") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_series(rng, 10), b = random_series(rng, 10), c = random_series(rng, 10);
      CHECK(mul(a, b) == mul(b, a));
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
      CHECK(sub(add(a, b), b) == a);
    }
  }

  TEST_CASE("integer powers") {
    CHECK(integer_power(poly({0, 1}, 4), 3) == poly({0, 0, 0, 1}, 4));
    CHECK(integer_power(poly({1, 1}, 4), 2) == poly({1, 2, 1}, 4));
    CHECK(integer_power(poly({3, 1}, 4), 0) == poly({1}, 4));
    CHECK_THROWS_AS(integer_power(poly({1, 1}, 4), -1), usage_error);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
      auto g = random_series(rng, 12);
      if (trial % 4 == 0) g[0] = CQ{};
      if (trial % 4 == 1) g[1] = g[0] = CQ{};
      const int m = trial % 7;
      CHECK(integer_power(g, m) == oracle::repeated_mul(g, m));
    }
  }

  TEST_CASE("real powers") {
    CHECK(real_power(poly({1, 1}, 6), Q(1)) == poly({1, 1}, 6));
    const auto root = real_power(poly({1, 1}, 6), Q(1, 2));
    CHECK(root == oracle::binomial_series_power(poly({1, 1}, 6), Q(1, 2)));
    CHECK(root[2] == CQ(Q(-1, 8)));
    CHECK(root[3] == CQ(Q(1, 16)));
    CHECK(real_power(poly({1, 2, 1}, 6), Q(1, 2)) == poly({1, 1}, 6));
    CHECK_THROWS_AS(real_power(poly({2, 1}, 4), Q(1, 2)), domain_error);

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = random_series(rng, 8, true);
      const Q c(1 + trial, 3 + trial % 5);
      const Q d(trial % 4 - 2, 7);
      CHECK(mul(real_power(g, c), real_power(g, d)) == real_power(g, Q(c + d)));
      CHECK(real_power(g, c) == binomial_power(g, c));
      CHECK(real_power(g, Q(trial % 5)) == integer_power(g, trial % 5));
    }
  }

  TEST_CASE("float real power agrees with the binomial oracle") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Complex<double>> c(13);
      c[0] = Complex<double>(1.0);
      for (int k = 1; k <= 12; ++k) c[k] = Complex<double>(u(rng), u(rng));
      const TruncatedSeries<double> g(c, 12);
      const double e = 0.1 + trial * 0.37;
      const auto a = real_power(g, e);
      const auto b = oracle::binomial_series_power(g, e);
      for (int k = 0; k <= 12; ++k) CHECK(abs(a[k] - b[k]) <= 1e-10 * std::max(1.0, abs(b[k])));
    }
  }

  TEST_CASE("Salagean operator") {
    std::mt19937_64 rng(16);
    const auto f = random_series(rng, 6);
    CHECK(salagean(f, 0) == f);
    CHECK(salagean(poly({0, 1}, 4), 3) == poly({0, 1}, 4));
    CHECK(salagean(poly({0, 1, 1}, 4), 2) == poly({0, 1, 4}, 4));
    CHECK(salagean(salagean(f, 2), 3) == salagean(f, 5));
  }

  TEST_CASE("evaluation") {
    CHECK(evaluate(TruncatedSeries<Q>(5), CQ(Q(3))) == CQ{});
    CHECK(evaluate(poly({1}, 5), CQ(Q(7, 3))) == CQ(Q(1)));
    for (int n = 0; n <= 10; ++n) {
      TruncatedSeries<Q> geometric(n);
      for (int k = 0; k <= n; ++k) geometric[k] = CQ(Q(1));
      CHECK(evaluate(geometric, CQ(Q(1, 2))) == CQ(Q(2) * (Q(1) - ipow(Q(1, 2), n + 1))));
    }
  }

  TEST_CASE("shifts") {
    std::mt19937_64 rng(17);
    auto f = random_series(rng, 8);
    const auto up = shift_up(f);
    CHECK(up[0] == CQ{});
    CHECK(shift_down(up) == truncate(TruncatedSeries<Q>(std::vector<CQ>(f.coeffs().begin(), f.coeffs().end() - 1), 8), 8));
    CHECK_THROWS_AS(shift_down(poly({1, 1}, 3)), domain_error);
  }
}

TEST_SUITE("scalar") {
  TEST_CASE("rational parsing is exact") {
    CHECK(parse_scalar<Q>("0.9") == Q(9, 10));
    CHECK(parse_scalar<Q>("0.09") == Q(9, 100));
    CHECK(parse_scalar<Q>("-1.25e2") == Q(-125));
    CHECK(parse_scalar<Q>("2.5e-3") == Q(1, 400));
    CHECK(parse_scalar<Q>("07/08") == Q(7, 8));
    CHECK(parse_scalar<Q>(" 3 ") == Q(3));
    CHECK_THROWS_AS(parse_scalar<Q>("1/0"), usage_error);
    CHECK_THROWS_AS(parse_scalar<Q>("abc"), usage_error);
    CHECK_THROWS_AS(parse_scalar<Q>("1.5x"), usage_error);
    CHECK_THROWS_AS(parse_scalar<Q>("1e"), usage_error);
  }

  TEST_CASE("float parsing and formatting") {
    CHECK(parse_scalar<double>("0.25") == 0.25);
    CHECK(parse_scalar<double>("1/4") == 0.25);
    CHECK(format_scalar(2.0 / 3.0) == "0.66666666666666663");
    CHECK(format_scalar(Q(2, 3)) == "2/3");
    CHECK_THROWS_AS(parse_scalar<double>("x"), usage_error);
  }

  TEST_CASE("complex helpers") {
    const Complex<Q> z(Q(3), Q(4));
    CHECK(norm(z) == Q(25));
    CHECK(abs(z) == doctest::Approx(5.0));
    CHECK(modulus(Complex<Q>(Q(-3, 2))) == Q(3, 2));
    CHECK(z / z == Complex<Q>(Q(1)));
    CHECK(ipow(Q(2), -3) == Q(1, 8));
  }
}
