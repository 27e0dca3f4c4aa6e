#pragma once

// Stiff pressure relaxation (per-cell height reset) and exact-in-time
// velocity relaxation with the fitted interfacial-area drag law.

#include <cmath>

#include "heavylayer/state.hpp"

namespace heavylayer {

// A_I(t) = a*h0*exp(-b*t) + c.
inline double interfacial_area(double t, const DragLaw& law) {
  return law.a * law.h0 * std::exp(-law.b * t) + law.c;
}

// Time integral of A_I over [t0, t0+dt]; closed form, with the b -> 0 limit
// handled separately.
inline double interfacial_area_integral(double t0, double dt, const DragLaw& law) {
  if (law.b == 0.0) return (law.a * law.h0 + law.c) * dt;
  return law.a * law.h0 / (-law.b) * std::exp(-law.b * t0) *
             (std::exp(-law.b * dt) - 1.0) +
         law.c * dt;
}

// Height reset towards pressure equilibrium: the light layer returns to its
// reference density, the heavy layer additionally carries the hydrostatic
// load of the relaxed upper column. Per-layer mass h*rho is preserved
// exactly; velocities are untouched. c1_relax is the physical sound speed of
// the heavy fluid.
inline CellState pressure_relax(const CellState& cell, const FluidParams& fluid1,
                                const FluidParams& fluid2, double g,
                                double c1_relax) {
  const double m1 = cell.lower.mass();
  const double m2 = cell.upper.mass();

  const double h2 = m2 / fluid2.rho_ref;
  const double h1 =
      m1 / (fluid1.rho_ref + fluid2.rho_ref * g * h2 / (c1_relax * c1_relax));

  CellState out = cell;
  out.upper.h = h2;
  out.upper.rho = fluid2.rho_ref;
  out.lower.h = h1;
  out.lower.rho = m1 / h1;
  return out;
}

// Exact solution of the acoustic-drag ODE over one step. With
// cst = -(Z1 Z2/(Z1+Z2)) (1/(h1 rho1) + 1/(h2 rho2)) the velocity difference
// decays by exp(cst * integral of A_I), while the total momentum
// h1 rho1 u1 + h2 rho2 u2 is preserved. Heights and densities are untouched.
inline CellState velocity_relax(const CellState& cell, double t0, double dt,
                                const DragLaw& law, double z1, double z2) {
  const double m1 = cell.lower.mass();
  const double m2 = cell.upper.mass();
  const double cst = -(z1 * z2 / (z1 + z2)) * (1.0 / m1 + 1.0 / m2);
  const double decay = std::exp(cst * interfacial_area_integral(t0, dt, law));

  const double du = cell.upper.u - cell.lower.u;
  const double momentum = m1 * cell.lower.u + m2 * cell.upper.u;

  CellState out = cell;
  out.upper.u = (momentum + m1 * du * decay) / (m1 + m2);
  out.lower.u = out.upper.u - du * decay;
  return out;
}

}  // namespace heavylayer
