#include "coefbound/caratheodory.hpp"

#include <random>

namespace coefbound {

namespace {

// 53 random mantissa bits in (0, 1).
double uniform_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

int atom_count(std::mt19937_64& rng, int max_atoms) {
  if (max_atoms < 1) throw usage_error("random_herglotz: max_atoms must be >= 1");
  return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_atoms));
}

}  // namespace

template <>
HerglotzAtoms<double> random_herglotz<double>(std::uint64_t seed, int max_atoms) {
  std::mt19937_64 rng(seed);
  const int count = atom_count(rng, max_atoms);

  // normalized exponential spacings are uniform on the simplex
  std::vector<double> weights(count);
  std::vector<double> angles(count);
  double total = 0;
  for (int j = 0; j < count; ++j) {
    angles[j] = 2.0 * std::numbers::pi * uniform_open(rng);
    weights[j] = -std::log(uniform_open(rng));
    total += weights[j];
  }

  std::vector<HerglotzAtom<double>> atoms;
  atoms.reserve(count);
  double assigned = 0;
  for (int j = 0; j < count; ++j) {
    const double w = (j + 1 == count) ? 1.0 - assigned : weights[j] / total;
    assigned += w;
    atoms.push_back(atom_from_angle(std::max(w, 0.0), angles[j]));
  }
  return HerglotzAtoms<double>(std::move(atoms));
}

template <>
HerglotzAtoms<Rational> random_herglotz<Rational>(std::uint64_t seed, int max_atoms) {
  std::mt19937_64 rng(seed);
  const int count = atom_count(rng, max_atoms);

  constexpr double slope_den = 1024.0;
  std::vector<Rational> weights(count);
  std::vector<Complex<Rational>> points(count);
  Rational total(0);
  for (int j = 0; j < count; ++j) {
    const double theta = 2.0 * std::numbers::pi * uniform_open(rng);
    const double t = std::tan(theta / 2.0);
    if (std::abs(t) > 1e9) {
      points[j] = Complex<Rational>(Rational(-1));
    } else {
      points[j] = unit_from_slope(Rational(std::round(t * slope_den)) / Rational(1024));
    }
    weights[j] = Rational(1 + static_cast<long>(rng() % (1u << 20)));
    total += weights[j];
  }

  std::vector<HerglotzAtom<Rational>> atoms;
  atoms.reserve(count);
  for (int j = 0; j < count; ++j) atoms.push_back(atom_at(Rational(weights[j] / total), points[j]));
  return HerglotzAtoms<Rational>(std::move(atoms));
}

}  // namespace coefbound
