#include <doctest.h>

#include "coefbound/bounds.hpp"
#include "oracles.hpp"

using namespace coefbound;

namespace {

using Q = Rational;
using CQ = Complex<Q>;

TruncatedSeries<Q> mobius(int order) { return kernel_series(CQ(Q(1)), order); }

// f = z (beta + (1-beta) p_n)^(1/alpha) through the binomial oracle
TruncatedSeries<Q> f_oracle(const TruncatedSeries<Q>& p, const ClassParams<Q>& c) {
  TruncatedSeries<Q> base = p;
  for (int k = 1; k <= p.order(); ++k)
    base[k] = base[k] * (Q(1) - c.beta) * ipow(Q(c.alpha / (c.alpha + Q(k))), c.n);
  return shift_up(oracle::binomial_series_power(base, Q(Q(1) / c.alpha)));
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("reconstruction of f") {
    const ClassParams<Q> c{1, Q(2), Q(0)};
    const auto f_one = f_from_p(TruncatedSeries<Q>::constant(CQ(Q(1)), 8), c, 8);
    CHECK(f_one == TruncatedSeries<Q>::monomial(1, CQ(Q(1)), 8));
    CHECK(f_from_p(mobius(8), c, 8)[2] == CQ(Q(2, 3)));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 12; ++trial) {
      const ClassParams<Q> params{trial % 4, Q(1 + trial, 3), Q(trial % 3, 4)};
      const auto p = herglotz_series(random_herglotz<Q>(rng(), 3), 7);
      const auto f = f_from_p(p, params, 7);
      CHECK(f == f_oracle(p, params));
      for (int k = 2; k <= 7; ++k) CHECK(a_k_direct(p, params, k) == f[k]);
    }
    auto flat = TruncatedSeries<Q>::constant(CQ(Q(1)), 6);
    for (int k = 2; k <= 6; ++k) CHECK(a_k_direct(flat, c, k) == CQ{});
    CHECK_THROWS_AS(f_from_p(mobius(2), c, 8), usage_error);
  }

  TEST_CASE("membership witness") {
    const ClassParams<Q> c{2, Q(3, 2), Q(1, 4)};
    CHECK(verify_membership(TruncatedSeries<Q>::monomial(1, CQ(Q(1)), 6), c, 0.9, 64) == doctest::Approx(0.75));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ClassParams<double> params{int(seed % 4), 0.5 + seed * 0.3, 0.1 * (seed % 5)};
      const auto f = f_from_p(random_herglotz<double>(seed, 4), params, 64);
      CHECK(verify_membership(f, params, 0.9, 360) > -truncation_tail_bound(0.9, 63));
    }
    CHECK_THROWS_AS(verify_membership(TruncatedSeries<Q>::constant(CQ(Q(1)), 4), c, 0.9, 64), domain_error);
  }

  TEST_CASE("sharp bound") {
    CHECK(sharp_bound(ClassParams<Q>{1, Q(2), Q(0)}, 2) == Q(2, 3));
    for (int k = 2; k <= 8; ++k) {
      CHECK(sharp_bound(ClassParams<Q>{0, Q(3), Q(1, 4)}, k) == Q(1, 2));
      CHECK(sharp_bound(ClassParams<Q>{2, Q(3), Q(1, 2)}, k) * 2 == sharp_bound(ClassParams<Q>{2, Q(3), Q(0)}, k));
    }
    CHECK(sharp_bound(ClassParams<double>{1, 2.0, 1 - 1e-12}, 3) < 1e-11);
    CHECK_THROWS_AS(sharp_bound(ClassParams<Q>{1, Q(2), Q(0)}, 1), usage_error);
    CHECK_THROWS_AS(sharp_bound(ClassParams<Q>{1, Q(2), Q(1)}, 2), domain_error);
  }

  TEST_CASE("region classification agrees with the inequality oracle") {
    CHECK(classify_region(Q(7), 2) == RegionTag::Omega1);
    CHECK(classify_region(Q(2), 3) == RegionTag::Omega3);
    CHECK(classify_region(Q(2, 5), 4) == RegionTag::Omega1);
    CHECK(classify_region(Q(1, 2), 4) == RegionTag::Omega2);
    CHECK(classify_region(Q(1), 4) == RegionTag::Omega2);
    CHECK(classify_region(Q(1, 3), 5) == RegionTag::Omega3);
    CHECK(classify_region(Q(1, 2), 5) == RegionTag::OutOfTheorem1Range);
    for (int k = 2; k <= 12; ++k)
      for (int num = 1; num <= 60; ++num) {
        const Q alpha(num, 24);
        CHECK(to_string(classify_region(alpha, k)) == std::string(oracle::brute_region(to_double(alpha), k)));
      }
  }

  TEST_CASE("theorem1_bound") {
    // Omega_1: every term is positive, so the bound is the Moebius coefficient
    for (int k = 2; k <= 7; ++k) {
      const Q alpha(1, 2 * k);
      const ClassParams<Q> c{1, alpha, Q(1, 3)};
      REQUIRE(classify_region(alpha, k) == RegionTag::Omega1);
      const auto t1 = theorem1_bound(c, k);
      REQUIRE(t1.value);
      CHECK(*t1.value == f_oracle(mobius(k), c)[k].re);
    }
    for (int n = 0; n <= 3; ++n)
      for (int a = 3; a <= 12; ++a) {
        const ClassParams<Q> c{n, Q(a, 2), Q(1, 5)};
        for (int k : {2, 3}) CHECK(*theorem1_bound(c, k).value == sharp_bound(c, k));
      }
    CHECK_FALSE(theorem1_bound(ClassParams<Q>{1, Q(2), Q(0)}, 4).value);
  }

  TEST_CASE("theorem2_estimate") {
    CHECK(theorem2_estimate(1.0, 0) == doctest::Approx(std::exp(0.624)));
    CHECK(theorem2_estimate(1.0, 0) == doctest::Approx(1.8664).epsilon(1e-4));
    CHECK(theorem2_estimate(2.0, 3) == doctest::Approx(std::exp(0.624 * 4 + 7.5 * (1 + 0.5 + 1.0 / 3))));
    CHECK_THROWS_AS(theorem2_estimate(1.0, -1), usage_error);
    CHECK_THROWS_AS(theorem2_estimate(0.0, 1), domain_error);
  }

  TEST_CASE("extremal generators attain the sharp bound") {
    CHECK(herglotz_series(extremal_p<Q>(2), 6) == mobius(6));
    CHECK(herglotz_series(extremal_p<Q>(3), 6) == extremal_series<Q>(3, 6));
    CHECK(herglotz_series(extremal_p<Q>(5), 12) == extremal_series<Q>(5, 12));
    CHECK_THROWS_AS(extremal_p<Q>(4), domain_error);
    for (int k = 2; k <= 9; ++k) {
      const ClassParams<Q> c{2, Q(5, 2), Q(1, 3)};
      CHECK(modulus(f_from_p(extremal_series<Q>(k, 9), c, 9)[k]) == sharp_bound(c, k));
    }
  }

  TEST_CASE("gamma scheme") {
    CHECK(gamma_target(1, Q(3)) == Q(1));
    CHECK(gamma_target(2, Q(2)) == Q(1, 4));
    for (int m = 2; m <= 6; ++m) CHECK(gamma_target(m, Q(1)) == Q(0));
    const std::vector<Q> zeros(4, Q(0));
    const auto g = gamma_sequence<Q>(zeros, 4);
    CHECK(g[0] == Q(1));
    CHECK(g[3] == Q(1, 8));
  }

  TEST_CASE("h_k constructions") {
    const auto h2 = build_hk(2, Q(3), 8);
    CHECK(h2.series == TruncatedSeries<Q>::constant(CQ(Q(1)), 8));
    CHECK(check_eq24(h2.scheme, Q(3)));

    const auto h3 = build_hk(3, Q(2), 8);
    CHECK(h3.scheme.d[1] == Q(-1));
    CHECK(h3.series[1] == CQ(Q(-1)));
    CHECK(check_eq24(h3.scheme, Q(2)));

    const auto h4 = build_hk(4, Q(2), 8);
    CHECK(check_eq24(h4.scheme, Q(2)));
    auto perturbed = h4.scheme;
    perturbed.d[2] += Q(1, 1000);
    CHECK_FALSE(check_eq24(perturbed, Q(2)));
    // the lower relation at m = 2 would force d_1 = -2/alpha
    CHECK(gamma_residuals(h4.scheme, Q(2))[1] == Q(1, 4));

    for (int k = 2; k <= 12; ++k)
      for (Q alpha : {Q(11, 10), Q(3, 2), Q(2), Q(3), Q(5), Q(10)}) {
        const auto hk = build_hk(k, alpha, 32);
        CHECK(check_eq24(hk.scheme, alpha));
        for (int j = 1; j <= 32; ++j) CHECK(norm(hk.series[j]) <= Q(4));
        Q total(0);
        for (const Q& w : hk.convex_weights) {
          CHECK(w >= Q(0));
          total += w;
        }
        CHECK(total == Q(1));
      }
    CHECK(hk_half_sigma(6, Q(2)) * 2 == Q(4, 105) * Q(1 * 3 * 5 * 7, 16));
    CHECK_THROWS_AS(build_hk(4, Q(1), 8), domain_error);
    CHECK_THROWS_AS(build_hk(6, Q(2), 4), usage_error);
  }

  TEST_CASE("nehari_series") {
    const ClassParams<Q> c{0, Q(2), Q(0)};
    const auto h = mobius(8);
    CHECK(nehari_series(h, TruncatedSeries<Q>(8), c, 8) == TruncatedSeries<Q>(8));
    auto g = half_hadamard(mobius(8), mobius(8));
    g[0] = CQ{};
    const auto a = nehari_series(h, g, c, 8);
    for (int k = 1; k <= 8; ++k) CHECK(norm(a[k]) <= Q(4));
    CHECK_THROWS_AS(nehari_series(h, mobius(8), c, 8), domain_error);
    // at n >= 1 the first coefficient is (1-beta) b'_1, above the stated bound
    const ClassParams<Q> c1{1, Q(2), Q(0)};
    CHECK(nehari_series(h, g, c1, 8)[1] == CQ(Q(2)));
    CHECK(nehari_bound(c1, 1) == Q(4, 3));
  }

  TEST_CASE("bound reports") {
    const ClassParams<Q> c{1, Q(2), Q(0)};
    const auto f = f_from_p(mobius(8), c, 8);
    const auto reports = bound_reports(f, c, 6);
    REQUIRE(reports.size() == 5);
    CHECK(reports[0].k == 2);
    CHECK(reports[0].a_k_abs == Q(2, 3));
    CHECK(reports[0].sharp_hit);
    CHECK(reports[0].bound_source == BoundSource::Theorem3);
    for (const auto& r : reports) CHECK(r.margin >= Q(0));

    const ClassParams<Q> low{1, Q(1, 5), Q(0)};
    const auto rl = bound_reports(f_from_p(mobius(10), low, 10), low, 10);
    CHECK(rl[6].bound_source == BoundSource::Theorem1);  // k = 8 sits in Omega_2
    CHECK(rl[0].bound_source == BoundSource::Theorem1);
    CHECK(rl.back().bound_source == BoundSource::Theorem2);
    CHECK_THROWS_AS(bound_reports(f, c, 9), usage_error);
  }
}
