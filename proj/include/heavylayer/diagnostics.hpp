#pragma once

// Front tracking, box-model oracle, scaling transforms, Froude regression
// and the experimental-planning formulas.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavylayer/state.hpp"

namespace heavylayer {

inline constexpr double ideal_gas_constant = 8.314;  // [J/(mol K)]

struct FrontSample {
  double t = 0.0;  // [s]
  double r = 0.0;  // front position [m]
};

struct FrontTrace {
  std::vector<FrontSample> samples;  // times strictly increasing
  double h0 = 0.0;                   // initial column height [m]
  std::string scenario;
};

// Box-model inputs: disk-shaped cloud of constant volume spreading under
// reduced gravity.
struct BoxModelParams {
  double froude = 0.0;
  double v_gas = 0.0;    // released volume [m3]
  double rho_gas = 0.0;  // [kg/m3]
  double rho_air = 0.0;  // [kg/m3]
  double g = 9.81;       // [m/s2]
  double a0 = 0.0;       // initial disk area [m2]
};

// Scanning from the right boundary leftward, the front sits at the midpoint
// of the first adjacent cell pair whose height product h1*h2 varies by more
// than epsilon. Returns 0 when no variation is found.
inline double front_position(const Field& field, const Grid1D& grid, double epsilon) {
  for (int i = static_cast<int>(field.size()) - 2; i >= 0; --i) {
    const double p_here = field[i].lower.h * field[i].upper.h;
    const double p_next = field[i + 1].lower.h * field[i + 1].upper.h;
    if (std::abs(p_here - p_next) > epsilon)
      return 0.5 * (grid.cell_center(i) + grid.cell_center(i + 1));
  }
  return 0.0;
}

// dA/dt of the box model; the area grows linearly in time.
inline double box_model_slope(const BoxModelParams& p) {
  return 2.0 * std::numbers::pi * p.froude *
         std::sqrt(p.g * p.v_gas / std::numbers::pi * (p.rho_gas - p.rho_air) /
                   p.rho_air);
}

inline double box_model_area(double t, const BoxModelParams& p) {
  return box_model_slope(p) * t + p.a0;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

inline LinearFit linear_fit(const std::vector<double>& x,
                            const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit needs >= 2 samples");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("linear_fit: zero time variance");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

// Froude number from the least-squares slope of A(t) = pi R(t)^2 over the
// window; p.froude is ignored.
inline double fit_froude(const FrontTrace& trace, const BoxModelParams& p,
                         double t_min, double t_max) {
  std::vector<double> t, a;
  for (const FrontSample& s : trace.samples) {
    if (s.t >= t_min - 1e-12 && s.t <= t_max + 1e-12) {
      t.push_back(s.t);
      a.push_back(std::numbers::pi * s.r * s.r);
    }
  }
  if (t.size() < 3)
    throw std::invalid_argument("fit_froude: fewer than 3 samples in window");
  BoxModelParams unit = p;
  unit.froude = 1.0;
  return linear_fit(t, a).slope / box_model_slope(unit);
}

// Nondimensionalization collapsing traces from different initial heights:
// S_r = (Rc^2 h0)^(-1/3), S_t = sqrt(S_r g (rho0/rho_a - 1)).
inline double scale_radius_factor(double rc, double h0) {
  return std::pow(rc * rc * h0, -1.0 / 3.0);
}

inline double scale_time_factor(double rc, double h0, double rho0, double rho_air,
                                double g) {
  return std::sqrt(scale_radius_factor(rc, h0) * g * (rho0 / rho_air - 1.0));
}

inline double scale_radius(double r, double rc, double h0) {
  return scale_radius_factor(rc, h0) * r;
}

inline double scale_time(double t, double rc, double h0, double rho0, double rho_air,
                         double g) {
  return scale_time_factor(rc, h0, rho0, rho_air, g) * t;
}

inline double scale_area(double a, double rc, double h0) {
  const double sr = scale_radius_factor(rc, h0);
  return sr * sr * a;
}

// Ideal-gas density from pressure, temperature and molar mass.
inline double gas_density(double p, double temperature, double molar_mass) {
  return p / temperature * molar_mass / ideal_gas_constant;
}

struct FillPlan {
  double t_fill = 0.0;  // [s]
  double volume = 0.0;  // [m3]
};

// Filling time and volume for a target gas height in a cylindrical container
// of internal radius rc at volumetric rate q.
inline FillPlan fill_plan(double h, double q, double rc) {
  const double t = std::numbers::pi * rc * rc * h / q;
  return {t, q * t};
}

struct FillCheck {
  double volume = 0.0;  // [m3]
  double height = 0.0;  // [m]
};

// Actual volume and height from the recorded rate and duration.
inline FillCheck fill_check(double q, double t, double rc) {
  const double v = q * t;
  return {v, v / (std::numbers::pi * rc * rc)};
}

struct CloudExpansion {
  double k = 0.0;         // R dR/dt [m2/s]
  double reynolds = 0.0;  // rho_air K / mu_air
};

// Expansion-rate constant K = Fr sqrt(g V (rho_gas - rho_air) / (pi rho_air))
// and the cloud Reynolds number.
inline CloudExpansion reynolds(const BoxModelParams& p, double mu_air) {
  const double k = p.froude * std::sqrt(p.g * p.v_gas * (p.rho_gas - p.rho_air) /
                                        (std::numbers::pi * p.rho_air));
  return {k, p.rho_air / mu_air * k};
}

}  // namespace heavylayer
