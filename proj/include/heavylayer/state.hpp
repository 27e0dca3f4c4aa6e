#pragma once

// Domain types and dam-break initialization for the two-layer shallow water
// solver. Index 1 is the heavy lower layer, index 2 the light upper layer.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace heavylayer {

// Layer heights never drop below this value. It doubles as the ambient
// heavy-gas height in the dam-break scenarios.
inline constexpr double h_min = 1e-6;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LayerState {
  double h = 0.0;    // layer height [m]
  double rho = 0.0;  // density [kg/m3]
  double u = 0.0;    // layer-averaged velocity [m/s]

  double mass() const { return h * rho; }          // [kg/m2]
  double momentum() const { return h * rho * u; }  // [kg/(m s)]
};

struct CellState {
  LayerState lower;  // heavy fluid (index 1)
  LayerState upper;  // light fluid (index 2)
};

// Per-fluid constants. theta scales the numerical sound speed used in the
// hyperbolic step; c_phys enters drag impedances and the relaxed-state reset.
struct FluidParams {
  double rho_ref = 0.0;  // density at atmospheric pressure [kg/m3]
  double c_phys = 0.0;   // physical sound speed [m/s]
  double theta = 2.0;    // numerical sound-speed factor, must exceed 1
};

enum class Geometry { planar, cylindrical };

struct Grid1D {
  Geometry geometry = Geometry::planar;
  double length = 0.0;  // domain extent [m]
  int m_cells = 0;

  double dx() const { return length / m_cells; }
  double cell_center(int i) const { return (i + 0.5) * dx(); }
};

// Time-dependent interfacial-area correlation A_I(t) = a*h0*exp(-b*t) + c.
struct DragLaw {
  double a = 0.0;   // [1/m]
  double b = 0.0;   // [1/s]
  double c = 0.0;   // dimensionless floor, keeps the area non-zero
  double h0 = 0.0;  // initial heavy-column height [m]
};

struct SimConfig {
  Grid1D grid{Geometry::cylindrical, 0.6, 1000};
  FluidParams fluid1{3.506, 218.0, 2.0};
  FluidParams fluid2{1.29, 340.0, 2.0};

  double dam_x0 = 0.05;  // initial column radius / dam position [m]
  double h1_left = 0.15, h1_right = 1e-6;
  double h2_left = 1.05, h2_right = 1.2;
  double rho1_init = 3.506, rho2_init = 1.29;
  double u1_init = 0.0, u2_init = 0.0;

  double gravity = 9.81;
  double p0 = 101325.0;  // atmospheric pressure [Pa]
  double cfl = 0.8;
  double t_end = 1.0;

  DragLaw drag{0.2, 12.5, 5e-5, 0.15};
  bool drag_enabled = true;

  double epsilon_front = 1e-10;  // front indicator threshold [m2]
  bool muscl = true;
  double output_cadence = 0.01;           // trace row spacing [s]
  std::vector<double> snapshot_times;     // field dumps [s]
  double fit_t_min = 0.1, fit_t_max = 0.8;

  void validate() const {
    if (grid.m_cells < 3) throw ConfigError("grid.cells must be at least 3");
    if (!(grid.length > 0.0)) throw ConfigError("grid.length must be positive");
    if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0,1)");
    if (!(dam_x0 > 0.0 && dam_x0 < grid.length))
      throw ConfigError("dam.x0 must lie inside the domain");
    if (!(epsilon_front > 0.0)) throw ConfigError("front.epsilon must be positive");
    if (!(fluid1.theta > 1.0) || !(fluid2.theta > 1.0))
      throw ConfigError("theta must exceed 1 (subcharacteristic condition)");
    if (!(fluid1.rho_ref > 0.0) || !(fluid2.rho_ref > 0.0) ||
        !(fluid1.c_phys > 0.0) || !(fluid2.c_phys > 0.0))
      throw ConfigError("fluid reference densities and sound speeds must be positive");
    if (!(h1_left > 0.0) || !(h1_right > 0.0) || !(h2_left > 0.0) || !(h2_right > 0.0))
      throw ConfigError("initial heights must be positive");
    if (!(rho1_init > 0.0) || !(rho2_init > 0.0))
      throw ConfigError("initial densities must be positive");
    if (drag.a < 0.0 || drag.b < 0.0 || drag.c < 0.0 || drag.h0 < 0.0)
      throw ConfigError("drag law constants must be non-negative");
    if (!(t_end >= 0.0)) throw ConfigError("time.t_end must be non-negative");
    if (!(output_cadence > 0.0)) throw ConfigError("output.cadence must be positive");
    if (!(gravity > 0.0)) throw ConfigError("physics.g must be positive");
  }
};

using Field = std::vector<CellState>;

// Piecewise-constant dam-break field: cells with center < x0 carry the left
// state, cells with center >= x0 the right state. Heights are floored at
// h_min; the configured densities and velocities are kept as given.
inline Field init_dam_break(const SimConfig& cfg) {
  cfg.validate();
  Field field(static_cast<std::size_t>(cfg.grid.m_cells));
  for (int i = 0; i < cfg.grid.m_cells; ++i) {
    const bool left = cfg.grid.cell_center(i) < cfg.dam_x0;
    CellState& c = field[static_cast<std::size_t>(i)];
    c.lower = {std::max(left ? cfg.h1_left : cfg.h1_right, h_min), cfg.rho1_init,
               cfg.u1_init};
    c.upper = {std::max(left ? cfg.h2_left : cfg.h2_right, h_min), cfg.rho2_init,
               cfg.u2_init};
  }
  return field;
}

}  // namespace heavylayer
