#pragma once

// Verification harness: parameter grids, randomized and extremal suites, the
// h_k audit, and the string-valued rows the CLI writes out.
//
// Suites are instantiated for both backends (double, Rational). Each row of a
// suite is one assertion; numeric fields are preformatted by the backend
// (17 significant digits, or exact fractions).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coefbound/bounds.hpp"

namespace coefbound {

template <Scalar S>
struct GridSpec {
  std::vector<int> n_values;
  std::vector<S> alpha_values;
  std::vector<S> beta_values;
  int k_max = 12;
  int order = default_order;
  int trials = 1000;
  std::uint64_t seed = 0;
  int max_atoms = 4;

  double slack = 1e-9;     // absolute slack on inequality claims
  double rel_tol = 1e-10;  // relative tolerance on coefficient identities (float)

  void validate() const;
  /// Usage error unless every alpha is > 1 (the sharp-bound suites).
  void require_alpha_above_one(const char* suite) const;
};

/// n in {0,1,2,3}, alpha in {1.1, 1.5, 2, 3, 5, 10}, beta in {0, 0.25, 0.5, 0.9},
/// k_max = 12, order = 64, trials = 1000, seed = 0.
template <Scalar S>
GridSpec<S> default_grid();

/// seed XOR h, where h chains splitmix64 over (n, bits of alpha, bits of beta,
/// trial) and alpha, beta enter as IEEE doubles. Serial and parallel sweeps
/// therefore draw identical generators.
std::uint64_t trial_seed(std::uint64_t seed, int n, double alpha, double beta, std::uint64_t trial);

std::uint64_t splitmix64(std::uint64_t x);

struct SuiteReport {
  std::string suite;
  std::optional<int> n;
  std::string alpha;
  std::optional<std::string> beta;
  int k = 0;
  bool pass = true;
  std::string worst_margin;
  std::string detail;
  std::string witness;  // compact p_spec document, set when the row failed
  std::optional<std::uint64_t> witness_seed;
  double elapsed_seconds = 0;  // not written to report files
};

struct BoundsRow {
  int n = 0;
  std::string alpha;
  std::string beta;
  int k = 0;
  std::string sharp_bound;
  std::string theorem1_bound;  // empty outside the Omega regions
  std::string region;
  std::string theorem2_estimate;
};

template <Scalar S>
std::vector<BoundsRow> run_bounds_table(const GridSpec<S>& grid);

/// Extremal generators attain |a_k| = sharp_bound. Float rows compare with
/// rel_tol (set it to 0 to see float rounding); rational rows are exact.
template <Scalar S>
std::vector<SuiteReport> run_extremal_suite(const GridSpec<S>& grid);

/// `trials` random generators per grid point; |a_k| <= sharp_bound + slack.
/// Also records whether the extremal generator attains the sampled maximum.
template <Scalar S>
std::vector<SuiteReport> run_random_suite(const GridSpec<S>& grid);

/// build_hk / check_eq24 / |d_mu| <= 2 / disk positivity for k = 2..k_max,
/// plus the comparison of the published h_6..h_10 constants with the recipe.
template <Scalar S>
std::vector<SuiteReport> run_hk_audit(int k_max, const std::vector<S>& alpha_values, int order,
                                      double radius = 0.99, int samples = 720);

/// At alpha = 1, compares the extremal |a_k| with 2(1-beta)/k^n and
/// 2(1-beta)/(k+1)^n and reports which one it matches.
template <Scalar S>
std::vector<SuiteReport> run_alpha_one_audit(const GridSpec<S>& grid);

/// Samples (h, G) with 1 + G = half_hadamard(p, H) and checks
/// |A_k| <= 2(1-beta) alpha^n / (alpha + k)^n + slack.
template <Scalar S>
std::vector<SuiteReport> run_nehari_suite(const GridSpec<S>& grid);

/// theorem2_estimate(alpha, k) against |A_{k+1}(alpha)| of f^alpha/z^alpha,
/// recomputed from f, for k = 0..k_max.
template <Scalar S>
std::vector<SuiteReport> run_theorem2_suite(const GridSpec<S>& grid);

template <Scalar S>
struct ExpandResult {
  TruncatedSeries<S> f;
  std::vector<BoundReport<S>> reports;
  double membership = 0;  // min Re of the class quotient minus beta
  double radius = 0;
  int samples = 0;
};

template <Scalar S>
ExpandResult<S> expand(const HerglotzAtoms<S>& p, const ClassParams<S>& params, int order, int k_max,
                       double radius, int samples);

bool all_pass(const std::vector<SuiteReport>& reports);

}  // namespace coefbound
