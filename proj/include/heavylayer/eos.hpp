#pragma once

// Barotropic equations of state and the numerical sound speed used during
// the hyperbolic step.

#include <cmath>
#include <stdexcept>

#include "heavylayer/state.hpp"

namespace heavylayer {

// Heavy layer: p1 = p0 + rho2*g*h2 + c1^2*(rho1 - rho1_ref). The hydrostatic
// load of the upper layer enters through the EOS.
inline double pressure_lower(double rho1, double rho2, double h2,
                             const FluidParams& fluid1, double g, double p0,
                             double c1) {
  return p0 + rho2 * g * h2 + c1 * c1 * (rho1 - fluid1.rho_ref);
}

// Light layer: p2 = p0 + c2^2*(rho2 - rho2_ref).
inline double pressure_upper(double rho2, const FluidParams& fluid2, double p0,
                             double c2) {
  return p0 + c2 * c2 * (rho2 - fluid2.rho_ref);
}

// c_k = sqrt(theta * g * h / 2). Valid during the hyperbolic step only;
// theta > 1 keeps the scheme on the stable side of the subcharacteristic
// condition.
inline double numerical_sound_speed(double h, double theta, double g) {
  if (!(theta > 1.0))
    throw std::invalid_argument("numerical sound speed requires theta > 1");
  return std::sqrt(theta * 0.5 * g * h);
}

}  // namespace heavylayer
