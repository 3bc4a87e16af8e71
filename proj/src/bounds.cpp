#include "coefbound/bounds.hpp"

namespace coefbound {

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::Omega1: return "Omega1";
    case RegionTag::Omega2: return "Omega2";
    case RegionTag::Omega3: return "Omega3";
    case RegionTag::OutOfTheorem1Range: return "OutOfTheorem1Range";
  }
  return "?";
}

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::Theorem1: return "Theorem1";
    case BoundSource::Theorem2: return "Theorem2";
    case BoundSource::Theorem3: return "Theorem3";
  }
  return "?";
}

double theorem2_estimate(double alpha, int k) {
  if (k < 0) throw usage_error("theorem2_estimate: k must be >= 0");
  if (!(alpha > 0)) throw domain_error("theorem2_estimate: alpha must be > 0");
  double harmonic = 0;
  for (int j = 1; j <= k; ++j) harmonic += 1.0 / j;
  const double a2 = alpha * alpha;
  return std::exp(0.624 * a2 + (2.0 * a2 - 0.5) * harmonic);
}

}  // namespace coefbound
