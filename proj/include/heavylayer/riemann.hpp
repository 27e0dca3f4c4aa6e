#pragma once

// HLL-type Riemann solver for the two-layer system at one cell face. Both
// layers share one wave fan bounded by the two most extreme speeds. The
// non-conservative coupling between the layers is handled through the
// face-frozen constant (rho2*h2)*, which turns the momentum equations into
// locally conservative ones.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heavylayer/eos.hpp"
#include "heavylayer/state.hpp"

namespace heavylayer {

struct WavePair {
  double s_left = 0.0;
  double s_right = 0.0;
};

// Per-layer fan data at one face.
struct LayerFan {
  double mass_star = 0.0;       // (rho_k h_k)*            [kg/m2]
  double flux_mass = 0.0;       // F*_mass,k               [kg/(m s)]
  double flux_momentum = 0.0;   // F*_mom,k, coupling term included
  double u_star = 0.0;          // interface velocity u*_k [m/s]
  double flux_transport = 0.0;  // (h_k u_k)*              [m2/s]
};

struct RiemannFan {
  double s_left = 0.0;
  double s_right = 0.0;
  double rho2h2_star = 0.0;  // shared face constant for the coupling term
  LayerFan layer1;
  LayerFan layer2;
};

// Davis estimates of the extreme left/right wave speeds for one layer.
inline WavePair wave_speed_estimates(const LayerState& left, const LayerState& right,
                                     double c_left, double c_right, double g) {
  const double a_left = std::sqrt(c_left * c_left + 0.5 * g * left.h);
  const double a_right = std::sqrt(c_right * c_right + 0.5 * g * right.h);
  return {std::min(left.u - a_left, right.u - a_right),
          std::max(left.u + a_left, right.u + a_right)};
}

// The two most extreme waves of the combined two-layer fan.
inline WavePair extreme_waves(const WavePair& layer1, const WavePair& layer2) {
  WavePair w{std::min(layer1.s_left, layer2.s_left),
             std::max(layer1.s_right, layer2.s_right)};
  if (!(w.s_left < w.s_right))
    throw std::runtime_error("degenerate Riemann fan: s_left >= s_right");
  return w;
}

// Single intermediate mass state (rho_k h_k)*.
inline double hll_mass(double q_left, double q_right, double u_left, double u_right,
                       double s_left, double s_right) {
  return (q_right * (u_right - s_right) - q_left * (u_left - s_left)) /
         (s_left - s_right);
}

struct HllStateFlux {
  double u_star = 0.0;  // intermediate state
  double f_star = 0.0;  // face flux
};

// HLL intermediate state and flux, with upwind selection when the fan does
// not straddle the face.
inline HllStateFlux hll_flux(double state_left, double state_right, double flux_left,
                             double flux_right, double s_left, double s_right) {
  if (s_left >= 0.0) return {state_left, flux_left};
  if (s_right <= 0.0) return {state_right, flux_right};
  const double inv = 1.0 / (s_left - s_right);
  return {(flux_right - flux_left - s_right * state_right + s_left * state_left) * inv,
          (flux_right * s_left - flux_left * s_right +
           s_left * s_right * (state_left - state_right)) *
              inv};
}

inline double interface_velocity(double momentum_star, double mass_star) {
  if (!(mass_star > 0.0))
    throw std::runtime_error("non-positive mass star state in Riemann fan");
  return momentum_star / mass_star;
}

// Contact solution for the height transport: the face height is the upwind
// side; the arithmetic mean breaks the zero-speed tie (flux is zero there).
inline double height_contact(double h_left, double h_right, double u_star) {
  if (u_star > 0.0) return h_left;
  if (u_star < 0.0) return h_right;
  return 0.5 * (h_left + h_right);
}

namespace detail {

// Momentum flux of one layer evaluated on one side, coupling term included.
// sign is -1 for layer 1 and +1 for layer 2; h1_side is the heavy-layer
// height of the same side (the coupling acts through the h1 gradient in both
// momentum equations).
inline double momentum_flux(const LayerState& s, double p_minus_p0, double g,
                            double rho2h2_star, double h1_side, double sign) {
  return s.momentum() * s.u + s.h * p_minus_p0 + 0.5 * s.rho * g * s.h * s.h +
         sign * g * rho2h2_star * h1_side;
}

}  // namespace detail

// Full face solution: wave estimates, shared fan, layer star states, fluxes,
// interface velocities and transport fluxes.
inline RiemannFan solve(const CellState& left, const CellState& right,
                        const FluidParams& fluid1, const FluidParams& fluid2,
                        double g, double p0) {
  const double c1l = numerical_sound_speed(left.lower.h, fluid1.theta, g);
  const double c1r = numerical_sound_speed(right.lower.h, fluid1.theta, g);
  const double c2l = numerical_sound_speed(left.upper.h, fluid2.theta, g);
  const double c2r = numerical_sound_speed(right.upper.h, fluid2.theta, g);

  const WavePair w1 = wave_speed_estimates(left.lower, right.lower, c1l, c1r, g);
  const WavePair w2 = wave_speed_estimates(left.upper, right.upper, c2l, c2r, g);
  const WavePair w = extreme_waves(w1, w2);

  RiemannFan fan;
  fan.s_left = w.s_left;
  fan.s_right = w.s_right;

  // Shared face constant from the layer-2 mass star (upwind side when the
  // fan does not straddle the face).
  if (w.s_left >= 0.0)
    fan.rho2h2_star = left.upper.mass();
  else if (w.s_right <= 0.0)
    fan.rho2h2_star = right.upper.mass();
  else
    fan.rho2h2_star = hll_mass(left.upper.mass(), right.upper.mass(), left.upper.u,
                               right.upper.u, w.s_left, w.s_right);

  const double p1l =
      pressure_lower(left.lower.rho, left.upper.rho, left.upper.h, fluid1, g, p0, c1l);
  const double p1r = pressure_lower(right.lower.rho, right.upper.rho, right.upper.h,
                                    fluid1, g, p0, c1r);
  const double p2l = pressure_upper(left.upper.rho, fluid2, p0, c2l);
  const double p2r = pressure_upper(right.upper.rho, fluid2, p0, c2r);

  auto solve_layer = [&](const LayerState& sl, const LayerState& sr, double pl,
                         double pr, double sign) {
    LayerFan lf;
    if (w.s_left >= 0.0)
      lf.mass_star = sl.mass();
    else if (w.s_right <= 0.0)
      lf.mass_star = sr.mass();
    else
      lf.mass_star = hll_mass(sl.mass(), sr.mass(), sl.u, sr.u, w.s_left, w.s_right);

    const HllStateFlux mass = hll_flux(sl.mass(), sr.mass(), sl.momentum(),
                                       sr.momentum(), w.s_left, w.s_right);
    lf.flux_mass = mass.f_star;

    const double fl =
        detail::momentum_flux(sl, pl - p0, g, fan.rho2h2_star, left.lower.h, sign);
    const double fr =
        detail::momentum_flux(sr, pr - p0, g, fan.rho2h2_star, right.lower.h, sign);
    const HllStateFlux mom =
        hll_flux(sl.momentum(), sr.momentum(), fl, fr, w.s_left, w.s_right);
    lf.flux_momentum = mom.f_star;

    lf.u_star = interface_velocity(mom.u_star, lf.mass_star);
    lf.flux_transport = height_contact(sl.h, sr.h, lf.u_star) * lf.u_star;
    return lf;
  };

  fan.layer1 = solve_layer(left.lower, right.lower, p1l, p1r, -1.0);
  fan.layer2 = solve_layer(left.upper, right.upper, p2l, p2r, +1.0);
  return fan;
}

}  // namespace heavylayer
