#pragma once

// Time integrator: CFL step control, reflective boundaries, optional
// MUSCL-Hancock reconstruction, the Godunov update of the two-layer system,
// cylindrical geometric sources, and the full operator-split step
// (hyperbolic -> cylindrical -> pressure relaxation -> velocity relaxation).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heavylayer/eos.hpp"
#include "heavylayer/relaxation.hpp"
#include "heavylayer/riemann.hpp"
#include "heavylayer/state.hpp"

namespace heavylayer {

struct SimulationError : std::runtime_error {
  int cell;
  double time;
  SimulationError(const std::string& msg, int cell_index, double t)
      : std::runtime_error(msg + " (cell " + std::to_string(cell_index) + ", t = " +
                           std::to_string(t) + " s)"),
        cell(cell_index),
        time(t) {}
};

// Mirror ghost state: same heights and densities, negated velocities.
inline CellState mirror_ghost(const CellState& interior) {
  CellState g = interior;
  g.lower.u = -g.lower.u;
  g.upper.u = -g.upper.u;
  return g;
}

// Reflective boundaries on both ends (symmetry on the left, wall on the
// right); returns the pair of ghost cells.
inline std::pair<CellState, CellState> apply_boundaries(const Field& field) {
  return {mirror_ghost(field.front()), mirror_ghost(field.back())};
}

// dt = cfl * dx / max(|u_k| + sqrt(c_k^2 + g h_k / 2)) with the numerical
// sound speed of the hyperbolic step. Throws on non-finite field values.
inline double compute_dt(const Field& field, const Grid1D& grid, double cfl, double g,
                         const FluidParams& fluid1, const FluidParams& fluid2,
                         double t = 0.0) {
  double smax = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const CellState& c = field[i];
    const double vals[6] = {c.lower.h, c.lower.rho, c.lower.u,
                            c.upper.h, c.upper.rho, c.upper.u};
    for (double v : vals)
      if (!std::isfinite(v))
        throw SimulationError("non-finite field value", static_cast<int>(i), t);
    const double c1 = numerical_sound_speed(c.lower.h, fluid1.theta, g);
    const double c2 = numerical_sound_speed(c.upper.h, fluid2.theta, g);
    smax = std::max(smax,
                    std::abs(c.lower.u) + std::sqrt(c1 * c1 + 0.5 * g * c.lower.h));
    smax = std::max(smax,
                    std::abs(c.upper.u) + std::sqrt(c2 * c2 + 0.5 * g * c.upper.h));
  }
  if (!(smax > 0.0))
    throw SimulationError("vanishing signal speed", 0, t);
  return cfl * grid.dx() / smax;
}

// Per-face left/right input states for the Riemann solver.
struct FaceStates {
  std::vector<CellState> left;   // size m+1
  std::vector<CellState> right;  // size m+1
};

namespace detail {

inline double van_leer_slope(double dm, double dp) {
  const double prod = dm * dp;
  if (prod <= 0.0) return 0.0;
  return 2.0 * prod / (dm + dp);
}

inline LayerState finish_layer(double h_new, double m_new, double q_new) {
  const double h = std::max(h_new, h_min);
  return {h, m_new / h, q_new / m_new};
}

// Clamp the height from below, rescaling the density so h*rho is unchanged.
inline void floor_height(LayerState& s) {
  if (s.h < h_min) {
    s.rho = s.mass() / h_min;
    s.h = h_min;
  }
}

}  // namespace detail

// Limited linear reconstruction of the primitive variables, plus (when dt is
// positive) the Hancock half-step predictor applied cell-locally to both
// endpoints. Domain-edge cells fall back to first order; so does any cell
// whose predicted endpoint loses mass positivity. Reconstructed heights are
// floored at h_min.
inline FaceStates muscl_reconstruct(const Field& field, const CellState& ghost_left,
                                    const CellState& ghost_right,
                                    const FluidParams& fluid1,
                                    const FluidParams& fluid2, double g, double dt,
                                    double dx) {
  const std::size_t m = field.size();
  std::vector<CellState> ext(m + 2);
  ext[0] = ghost_left;
  std::copy(field.begin(), field.end(), ext.begin() + 1);
  ext[m + 1] = ghost_right;

  std::vector<CellState> lo = ext, hi = ext;
  for (std::size_t j = 2; j + 2 < m + 2; ++j) {
    auto recon = [&](auto member, auto layer) {
      const double qm = ext[j - 1].*layer.*member;
      const double q0 = ext[j].*layer.*member;
      const double qp = ext[j + 1].*layer.*member;
      const double s = detail::van_leer_slope(q0 - qm, qp - q0);
      lo[j].*layer.*member = q0 - 0.5 * s;
      hi[j].*layer.*member = q0 + 0.5 * s;
    };
    for (auto layer : {&CellState::lower, &CellState::upper}) {
      recon(&LayerState::h, layer);
      recon(&LayerState::rho, layer);
      recon(&LayerState::u, layer);
    }
    for (auto* side : {&lo, &hi}) {
      (*side)[j].lower.h = std::max((*side)[j].lower.h, h_min);
      (*side)[j].upper.h = std::max((*side)[j].upper.h, h_min);
    }
  }

  if (dt > 0.0) {
    const double lam = 0.5 * dt / dx;
    for (std::size_t j = 1; j + 1 < m + 2; ++j) {
      const CellState& a = lo[j];
      const CellState& b = hi[j];

      auto flux = [&](const LayerState& s1, const LayerState& s2) {
        const double c1sq = fluid1.theta * 0.5 * g * s1.h;
        const double c2sq = fluid2.theta * 0.5 * g * s2.h;
        const double p1 = s2.rho * g * s2.h + c1sq * (s1.rho - fluid1.rho_ref);
        const double p2 = c2sq * (s2.rho - fluid2.rho_ref);
        struct {
          double f1, f2;
        } f{s1.momentum() * s1.u + s1.h * p1 + 0.5 * s1.rho * g * s1.h * s1.h,
            s2.momentum() * s2.u + s2.h * p2 + 0.5 * s2.rho * g * s2.h * s2.h};
        return f;
      };
      const auto fa = flux(a.lower, a.upper);
      const auto fb = flux(b.lower, b.upper);

      const double m2c = ext[j].upper.mass();
      const double coup = g * m2c * (b.lower.h - a.lower.h);

      const double dh1 = -lam * (b.lower.h * b.lower.u - a.lower.h * a.lower.u -
                                 ext[j].lower.h * (b.lower.u - a.lower.u));
      const double dh2 = -lam * (b.upper.h * b.upper.u - a.upper.h * a.upper.u -
                                 ext[j].upper.h * (b.upper.u - a.upper.u));
      const double dm1 = -lam * (b.lower.momentum() - a.lower.momentum());
      const double dm2 = -lam * (b.upper.momentum() - a.upper.momentum());
      const double dq1 = -lam * (fb.f1 - fa.f1) + lam * coup;
      const double dq2 = -lam * (fb.f2 - fa.f2) - lam * coup;

      bool ok = true;
      CellState nlo, nhi;
      for (auto [src, dst] : {std::pair{&lo[j], &nlo}, std::pair{&hi[j], &nhi}}) {
        const double m1 = src->lower.mass() + dm1;
        const double m2 = src->upper.mass() + dm2;
        if (!(m1 > 0.0) || !(m2 > 0.0)) {
          ok = false;
          break;
        }
        dst->lower =
            detail::finish_layer(src->lower.h + dh1, m1, src->lower.momentum() + dq1);
        dst->upper =
            detail::finish_layer(src->upper.h + dh2, m2, src->upper.momentum() + dq2);
      }
      if (ok) {
        lo[j] = nlo;
        hi[j] = nhi;
      } else {
        lo[j] = ext[j];
        hi[j] = ext[j];
      }
    }
  }

  FaceStates faces;
  faces.left.resize(m + 1);
  faces.right.resize(m + 1);
  for (std::size_t f = 0; f <= m; ++f) {
    faces.left[f] = hi[f];
    faces.right[f] = lo[f + 1];
  }
  return faces;
}

// First-order face states: plain cell values on both sides.
inline FaceStates first_order_faces(const Field& field, const CellState& ghost_left,
                                    const CellState& ghost_right) {
  const std::size_t m = field.size();
  FaceStates faces;
  faces.left.resize(m + 1);
  faces.right.resize(m + 1);
  for (std::size_t f = 0; f <= m; ++f) {
    faces.left[f] = (f == 0) ? ghost_left : field[f - 1];
    faces.right[f] = (f == m) ? ghost_right : field[f];
  }
  return faces;
}

// Godunov update of heights, masses and momenta from the face fans. The
// non-conservative terms use the pre-update cell-centered heights: the
// transport correction h_k^n (u*_{i+1/2} - u*_{i-1/2}) and the momentum
// coupling -+ g h_1^n [(rho2 h2)*_{i+1/2} - (rho2 h2)*_{i-1/2}], with - for
// layer 1 and + for layer 2. Heights are floored afterwards with the layer
// mass kept exact.
inline void godunov_update(Field& field, const std::vector<RiemannFan>& fans,
                           double dt, double dx, double g, double t = 0.0) {
  const double lam = dt / dx;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const RiemannFan& fl = fans[i];
    const RiemannFan& fr = fans[i + 1];
    CellState& c = field[i];

    // Pre-update cell values enter both corrections.
    const double h1n = c.lower.h;
    const double coupling = lam * h1n * g * (fr.rho2h2_star - fl.rho2h2_star);

    auto update_layer = [&](LayerState& s, const LayerFan& left, const LayerFan& right,
                            double coupling_term) {
      const double h_new = s.h - lam * (right.flux_transport - left.flux_transport) +
                           lam * s.h * (right.u_star - left.u_star);
      const double m_new = s.mass() - lam * (right.flux_mass - left.flux_mass);
      const double q_new = s.momentum() -
                           lam * (right.flux_momentum - left.flux_momentum) +
                           coupling_term;
      if (!(m_new > 0.0))
        throw SimulationError("negative layer mass after Godunov update",
                              static_cast<int>(i), t);
      s = detail::finish_layer(h_new, m_new, q_new);
    };

    update_layer(c.lower, fl.layer1, fr.layer1, -coupling);
    update_layer(c.upper, fl.layer2, fr.layer2, +coupling);
  }
}

// Geometric source terms of the cylindrical system, applied as a separate
// fractional step after the hyperbolic one. Masses receive
// -(1/R_i) avg[(h rho u)*] dt and momenta -(1/R_i) avg[(h rho u)* u*] dt,
// with the starred face values taken from the Riemann solution. Heights are
// untouched (pure transport); densities and velocities follow the masses.
inline void cylindrical_sources(Field& field, const std::vector<RiemannFan>& fans,
                                double dt, const Grid1D& grid, double t = 0.0) {
  if (grid.geometry != Geometry::cylindrical) return;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double radius = grid.cell_center(static_cast<int>(i));
    if (!(radius > 0.0))
      throw SimulationError("non-positive cell radius", static_cast<int>(i), t);
    const RiemannFan& fl = fans[i];
    const RiemannFan& fr = fans[i + 1];

    auto apply = [&](LayerState& s, const LayerFan& left, const LayerFan& right) {
      const double mass_flux_avg = 0.5 * (right.flux_mass + left.flux_mass);
      const double mom_flux_avg =
          0.5 * (right.flux_mass * right.u_star + left.flux_mass * left.u_star);
      const double m_new = s.mass() - dt * mass_flux_avg / radius;
      const double q_new = s.momentum() - dt * mom_flux_avg / radius;
      if (!(m_new > 0.0))
        throw SimulationError("negative layer mass after cylindrical step",
                              static_cast<int>(i), t);
      s.rho = m_new / s.h;
      s.u = q_new / m_new;
    };
    apply(field[i].lower, fl.layer1, fr.layer1);
    apply(field[i].upper, fl.layer2, fr.layer2);
  }
}

// One full operator-split step starting from time t: boundaries, optional
// MUSCL-Hancock reconstruction, face Riemann solves, Godunov update,
// cylindrical sources, pressure relaxation, velocity relaxation. dt is the
// CFL step clipped so t + dt does not pass t_limit. Returns the dt taken.
inline double step(Field& field, double t, double t_limit, const SimConfig& cfg) {
  const Grid1D& grid = cfg.grid;
  const double dx = grid.dx();

  double dt = compute_dt(field, grid, cfg.cfl, cfg.gravity, cfg.fluid1, cfg.fluid2, t);
  if (t_limit > t) dt = std::min(dt, t_limit - t);

  const auto [ghost_left, ghost_right] = apply_boundaries(field);
  const FaceStates faces =
      cfg.muscl ? muscl_reconstruct(field, ghost_left, ghost_right, cfg.fluid1,
                                    cfg.fluid2, cfg.gravity, dt, dx)
                : first_order_faces(field, ghost_left, ghost_right);

  std::vector<RiemannFan> fans(field.size() + 1);
  for (std::size_t f = 0; f < fans.size(); ++f)
    fans[f] = solve(faces.left[f], faces.right[f], cfg.fluid1, cfg.fluid2,
                    cfg.gravity, cfg.p0);

  godunov_update(field, fans, dt, dx, cfg.gravity, t);
  cylindrical_sources(field, fans, dt, grid, t);

  for (CellState& c : field) {
    c = pressure_relax(c, cfg.fluid1, cfg.fluid2, cfg.gravity, cfg.fluid1.c_phys);
    detail::floor_height(c.lower);
    detail::floor_height(c.upper);
  }

  if (cfg.drag_enabled) {
    const double z1 = cfg.fluid1.rho_ref * cfg.fluid1.c_phys;
    const double z2 = cfg.fluid2.rho_ref * cfg.fluid2.c_phys;
    for (CellState& c : field) c = velocity_relax(c, t, dt, cfg.drag, z1, z2);
  }
  return dt;
}

}  // namespace heavylayer
