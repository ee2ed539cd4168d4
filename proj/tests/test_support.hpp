#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "nearplane/lattice.hpp"

namespace nearplane::testing {

/// rho = 1, rho*cos(theta) = 0.3: the worked example used throughout.
inline const LatticeParams kRef{1.0, std::acos(0.3)};
/// Just inside the hexagonal limit.
inline const LatticeParams kHex{1.0, std::numbers::pi / 3 + 1e-6};
/// Just inside the rectangular limit.
inline const LatticeParams kRect{1.0, std::numbers::pi / 2 - 1e-6};

inline LatticeParams with_rcos(double rcos, double rho = 1.0) { return {rho, std::acos(rcos / rho)}; }

/// Random valid parameters with rho in [1, 3] and rho*cos(theta) in (0.01, 0.49).
inline LatticeParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rho_d(1.0, 3.0);
  std::uniform_real_distribution<double> a_d(0.01, 0.49);
  const double rho = rho_d(rng);
  return with_rcos(a_d(rng), rho);
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace nearplane::testing
