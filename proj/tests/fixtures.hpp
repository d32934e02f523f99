#pragma once

// Coefficient sets of the worked examples, built directly (no config files).

#include "dwave/operator.hpp"

namespace fixture {

using namespace dwave;

inline CoefficientProfile pa(double c, double k) {
  return CoefficientProfile::power_law(c, k, CoefficientRole::Diffusion);
}
inline CoefficientProfile pb(double c, double k) {
  return CoefficientProfile::power_law(c, k, CoefficientRole::Drift);
}

// a = sqrt(x), b = 1, damping on [0.1, 0.85].
inline CoefficientSet wd_internal(bool damped = true) {
  CoefficientSet c{pa(1, 0.5), pb(1, 0), std::nullopt, 0.025};
  if (damped) c.damping = DampingProfile{0.1, 0.85, 0.5, 0.5};
  return c;
}

// a = x^1.5, b = x/8, damping on [0.25, 0.95].
inline CoefficientSet sd_internal(bool damped = true) {
  CoefficientSet c{pa(1, 1.5), pb(0.125, 1), std::nullopt, 0.025};
  if (damped) c.damping = DampingProfile{0.25, 0.95, 0.5, 0.5};
  return c;
}

inline CoefficientSet wd_transmission() { return {pa(1, 0.5), pb(0.5, 0), std::nullopt, 0}; }
inline CoefficientSet sd_transmission() { return {pa(1, 1.5), pb(0.125, 1), std::nullopt, 0}; }

// a = 1, b = 0.
inline CoefficientSet uniform() {
  return {pa(1, 0), CoefficientProfile::zero_drift(), std::nullopt, 0};
}

}  // namespace fixture
