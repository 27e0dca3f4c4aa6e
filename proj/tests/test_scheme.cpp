#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "heavylayer/runner.hpp"
#include "heavylayer/scheme.hpp"

using namespace heavylayer;
using Catch::Approx;

namespace {

SimConfig planar_15cm() {
  SimConfig cfg;
  cfg.grid.geometry = Geometry::planar;
  cfg.epsilon_front = 1e-9;
  return cfg;
}

Field uniform_field(int n, const CellState& c) { return Field(n, c); }

// Uniform state in pressure equilibrium (fixed point of the relaxation).
CellState relaxed_uniform(double h1, double h2) {
  const double rho1 = 3.506 + 1.29 * 9.81 * h2 / (218.0 * 218.0);
  return {{h1, rho1, 0.0}, {h2, 1.29, 0.0}};
}

std::vector<RiemannFan> solve_all(const Field& field, const FaceStates& faces,
                                  const SimConfig& cfg) {
  std::vector<RiemannFan> fans(field.size() + 1);
  for (std::size_t f = 0; f < fans.size(); ++f)
    fans[f] =
        solve(faces.left[f], faces.right[f], cfg.fluid1, cfg.fluid2, cfg.gravity,
              cfg.p0);
  return fans;
}

double total_mass(const Field& field, int layer) {
  double m = 0.0;
  for (const CellState& c : field) m += (layer == 1 ? c.lower : c.upper).mass();
  return m;
}

}  // namespace

TEST_CASE("CFL time step") {
  SimConfig cfg = planar_15cm();
  SECTION("direct evaluation at a known signal speed") {
    // pick h2 so the fastest signal is exactly 2 m/s at rest:
    // sqrt((theta + 1)/2 g h) = 2  =>  h = 4 / (1.5 * 9.81)
    const double h2 = 4.0 / (1.5 * 9.81);
    const Field field = uniform_field(10, {{h_min, 3.506, 0.0}, {h2, 1.29, 0.0}});
    Grid1D grid{Geometry::planar, 10 * 6e-4, 10};
    const double dt = compute_dt(field, grid, 0.8, 9.81, cfg.fluid1, cfg.fluid2);
    CHECK(dt == Approx(2.4e-4).epsilon(1e-9));
  }
  SECTION("floored rest field keeps dt finite and positive") {
    const Field field = uniform_field(10, {{h_min, 3.506, 0.0}, {h_min, 1.29, 0.0}});
    Grid1D grid{Geometry::planar, 0.006, 10};
    const double dt = compute_dt(field, grid, 0.8, 9.81, cfg.fluid1, cfg.fluid2);
    CHECK(dt > 0.0);
    CHECK(std::isfinite(dt));
  }
  SECTION("non-finite values abort") {
    Field field = uniform_field(10, relaxed_uniform(0.1, 1.1));
    field[3].lower.u = std::numeric_limits<double>::quiet_NaN();
    Grid1D grid{Geometry::planar, 0.006, 10};
    CHECK_THROWS_AS(compute_dt(field, grid, 0.8, 9.81, cfg.fluid1, cfg.fluid2),
                    SimulationError);
  }
}

TEST_CASE("reflective boundaries") {
  const CellState edge{{0.12, 3.5, 0.8}, {1.1, 1.3, -0.2}};
  const CellState ghost = mirror_ghost(edge);
  CHECK(ghost.lower.h == edge.lower.h);
  CHECK(ghost.lower.rho == edge.lower.rho);
  CHECK(ghost.lower.u == -0.8);
  CHECK(ghost.upper.u == 0.2);

  SECTION("edge cell at rest gives an identical ghost") {
    const CellState rest{{0.12, 3.5, 0.0}, {1.1, 1.3, 0.0}};
    const CellState g = mirror_ghost(rest);
    CHECK(g.lower.u == 0.0);
    CHECK(g.upper.u == -0.0);
  }
  SECTION("wall face carries no mass flux") {
    SimConfig cfg = planar_15cm();
    for (double u : {0.0, 0.4, -1.3}) {
      const CellState cell{{0.12, 3.5, u}, {1.1, 1.3, -u}};
      const RiemannFan fan =
          solve(cell, mirror_ghost(cell), cfg.fluid1, cfg.fluid2, cfg.gravity, cfg.p0);
      CHECK(fan.layer1.flux_mass == 0.0);
      CHECK(fan.layer2.flux_mass == 0.0);
      CHECK(fan.layer1.flux_transport == 0.0);
      CHECK(fan.layer2.flux_transport == 0.0);
    }
  }
}

TEST_CASE("reconstruction") {
  SimConfig cfg = planar_15cm();
  SECTION("uniform field reconstructs to cell values") {
    const CellState c = relaxed_uniform(0.1, 1.1);
    const Field field = uniform_field(8, c);
    const auto [gl, gr] = apply_boundaries(field);
    const FaceStates faces = muscl_reconstruct(field, gl, gr, cfg.fluid1, cfg.fluid2,
                                               cfg.gravity, 0.0, 6e-4);
    for (std::size_t f = 0; f <= field.size(); ++f) {
      CHECK(faces.left[f].lower.h == Approx(c.lower.h));
      CHECK(faces.right[f].upper.h == Approx(c.upper.h));
    }
  }
  SECTION("monotone ramp stays bounded by neighbor cells") {
    Field field = uniform_field(8, relaxed_uniform(0.1, 1.1));
    for (std::size_t i = 0; i < field.size(); ++i)
      field[i].lower.h = 0.1 + 0.01 * static_cast<double>(i);
    const auto [gl, gr] = apply_boundaries(field);
    const FaceStates faces = muscl_reconstruct(field, gl, gr, cfg.fluid1, cfg.fluid2,
                                               cfg.gravity, 0.0, 6e-4);
    for (std::size_t f = 1; f < field.size(); ++f) {
      const double lo = field[f - 1].lower.h, hi = field[f].lower.h;
      CHECK(faces.left[f].lower.h >= lo - 1e-14);
      CHECK(faces.left[f].lower.h <= hi + 1e-14);
      CHECK(faces.right[f].lower.h >= lo - 1e-14);
      CHECK(faces.right[f].lower.h <= hi + 1e-14);
    }
  }
  SECTION("isolated extremum reconstructs first order") {
    Field field = uniform_field(7, relaxed_uniform(0.1, 1.1));
    field[3].lower.h = 0.2;
    const auto [gl, gr] = apply_boundaries(field);
    const FaceStates faces = muscl_reconstruct(field, gl, gr, cfg.fluid1, cfg.fluid2,
                                               cfg.gravity, 0.0, 6e-4);
    CHECK(faces.left[4].lower.h == Approx(0.2));
    CHECK(faces.right[3].lower.h == Approx(0.2));
  }
}

TEST_CASE("Godunov update") {
  SimConfig cfg = planar_15cm();
  SECTION("uniform field is unchanged") {
    const CellState c = relaxed_uniform(0.1, 1.1);
    Field field = uniform_field(12, c);
    const auto [gl, gr] = apply_boundaries(field);
    const FaceStates faces = first_order_faces(field, gl, gr);
    const auto fans = solve_all(field, faces, cfg);
    // interior cells see identical fans on both faces
    Field updated = field;
    godunov_update(updated, fans, 1e-4, 6e-4, cfg.gravity);
    for (std::size_t i = 1; i + 1 < field.size(); ++i) {
      CHECK(updated[i].lower.h == Approx(c.lower.h).epsilon(1e-13));
      CHECK(updated[i].upper.mass() == Approx(c.upper.mass()).epsilon(1e-13));
      CHECK(updated[i].lower.u == Approx(0.0).margin(1e-13));
    }
  }
  SECTION("one step conserves planar layer masses") {
    SimConfig c15 = planar_15cm();
    Field field = init_dam_break(c15);
    const double m1 = total_mass(field, 1), m2 = total_mass(field, 2);
    step(field, 0.0, 1.0, c15);
    CHECK(total_mass(field, 1) == Approx(m1).epsilon(1e-13));
    CHECK(total_mass(field, 2) == Approx(m2).epsilon(1e-13));
  }
}

TEST_CASE("cylindrical geometric sources") {
  SimConfig cfg = planar_15cm();
  Grid1D cyl{Geometry::cylindrical, 0.012, 20};
  SECTION("uniform rest field is unchanged") {
    const CellState c = relaxed_uniform(0.1, 1.1);
    Field field = uniform_field(20, c);
    const auto [gl, gr] = apply_boundaries(field);
    const auto fans = solve_all(field, first_order_faces(field, gl, gr), cfg);
    Field updated = field;
    cylindrical_sources(updated, fans, 1e-4, cyl);
    for (std::size_t i = 1; i + 1 < field.size(); ++i) {
      CHECK(updated[i].lower.rho == Approx(c.lower.rho).epsilon(1e-13));
      CHECK(updated[i].upper.u == Approx(0.0).margin(1e-13));
    }
  }
  SECTION("planar geometry is the identity") {
    const CellState c{{0.1, 3.5, 0.5}, {1.1, 1.29, 0.5}};
    Field field = uniform_field(20, c);
    const auto [gl, gr] = apply_boundaries(field);
    const auto fans = solve_all(field, first_order_faces(field, gl, gr), cfg);
    Field updated = field;
    Grid1D planar{Geometry::planar, 0.012, 20};
    cylindrical_sources(updated, fans, 1e-4, planar);
    for (std::size_t i = 0; i < field.size(); ++i) {
      CHECK(updated[i].lower.u == c.lower.u);
      CHECK(updated[i].upper.rho == c.upper.rho);
    }
  }
  SECTION("uniform outflow drains mass at rate h rho u / r") {
    const CellState c{{0.1, 3.5, 0.5}, {1.1, 1.29, 0.5}};
    Field field = uniform_field(20, c);
    const auto [gl, gr] = apply_boundaries(field);
    // interior faces all see the uniform state; use exact fluxes there
    auto fans = solve_all(field, first_order_faces(field, gl, gr), cfg);
    const double dt = 1e-5;
    Field updated = field;
    cylindrical_sources(updated, fans, dt, cyl);
    for (std::size_t i = 2; i + 2 < field.size(); ++i) {
      const double r = cyl.cell_center(static_cast<int>(i));
      const double expected = c.lower.mass() - dt * c.lower.mass() * c.lower.u / r;
      CHECK(updated[i].lower.mass() == Approx(expected).epsilon(1e-11));
    }
  }
}

TEST_CASE("full step") {
  SECTION("uniform relaxed rest field is a fixed point") {
    SimConfig cfg = planar_15cm();
    cfg.grid = {Geometry::planar, 0.02, 32};
    const CellState c = relaxed_uniform(0.1, 1.1);
    Field field = uniform_field(32, c);
    step(field, 0.0, 1.0, cfg);
    for (const CellState& cell : field) {
      CHECK(cell.lower.h == Approx(c.lower.h).epsilon(1e-12));
      CHECK(cell.upper.h == Approx(c.upper.h).epsilon(1e-12));
      CHECK(std::abs(cell.lower.u) < 1e-12);
      CHECK(std::abs(cell.upper.u) < 1e-12);
    }
  }
  SECTION("dam break starts a rightward front and drains the column edge") {
    SimConfig cfg;
    cfg.h1_left = 0.05;
    cfg.h2_left = 1.15;
    cfg.drag.h0 = 0.05;
    Field field = init_dam_break(cfg);
    const int edge = 82;  // last cell strictly left of the dam
    const double h1_before = field[edge].lower.h;
    const double h1_ahead_before = field[edge + 3].lower.h;
    double t = 0.0;
    for (int n = 0; n < 5; ++n) t += step(field, t, 1.0, cfg);
    CHECK(field[edge].lower.h < h1_before);
    CHECK(field[edge + 3].lower.h > h1_ahead_before);
    CHECK(field[edge + 1].lower.u > 0.0);
  }
  SECTION("disabled drag equals a zero interfacial-area law") {
    SimConfig a = planar_15cm();
    a.grid = {Geometry::planar, 0.06, 100};
    SimConfig b = a;
    a.drag_enabled = false;
    b.drag = {0.0, 0.0, 0.0, 0.15};
    Field fa = init_dam_break(a);
    Field fb = init_dam_break(b);
    double ta = 0.0, tb = 0.0;
    for (int n = 0; n < 10; ++n) {
      ta += step(fa, ta, 1.0, a);
      tb += step(fb, tb, 1.0, b);
    }
    REQUIRE(ta == tb);
    for (std::size_t i = 0; i < fa.size(); ++i) {
      CHECK(fa[i].lower.u == fb[i].lower.u);
      CHECK(fa[i].upper.h == fb[i].upper.h);
    }
  }
}

TEST_CASE("planar mirror symmetry is preserved to round-off") {
  SimConfig cfg = planar_15cm();
  cfg.grid = {Geometry::planar, 0.12, 200};
  Field field(200);
  for (int i = 0; i < 200; ++i) {
    const double x = cfg.grid.cell_center(i);
    const bool inside = std::abs(x - 0.06) < 0.02;
    field[i].lower = {inside ? 0.1 : h_min, 3.506, 0.0};
    field[i].upper = {inside ? 1.1 : 1.2, 1.29, 0.0};
  }
  double t = 0.0;
  for (int n = 0; n < 50; ++n) t += step(field, t, 1.0, cfg);
  for (int i = 0; i < 100; ++i) {
    const CellState& a = field[i];
    const CellState& b = field[199 - i];
    CHECK(a.lower.h == Approx(b.lower.h).epsilon(1e-11).margin(1e-14));
    CHECK(a.upper.h == Approx(b.upper.h).epsilon(1e-11).margin(1e-14));
    CHECK(a.lower.u == Approx(-b.lower.u).epsilon(1e-11).margin(1e-14));
    CHECK(a.upper.u == Approx(-b.upper.u).epsilon(1e-11).margin(1e-14));
  }
}

TEST_CASE("long planar run conserves mass and keeps the field positive") {
  SimConfig cfg = planar_15cm();
  cfg.grid.m_cells = 250;
  Field field = init_dam_break(cfg);
  const double m1 = total_mass(field, 1), m2 = total_mass(field, 2);
  double t = 0.0;
  for (int n = 0; n < 400; ++n) t += step(field, t, 10.0, cfg);
  CHECK(total_mass(field, 1) == Approx(m1).epsilon(1e-11));
  CHECK(total_mass(field, 2) == Approx(m2).epsilon(1e-11));
  for (const CellState& c : field) {
    CHECK(c.lower.h >= h_min * (1.0 - 1e-12));
    CHECK(c.upper.h >= h_min * (1.0 - 1e-12));
    CHECK(c.lower.rho > 0.0);
    CHECK(c.upper.rho > 0.0);
    CHECK(std::isfinite(c.lower.u));
  }
}

TEST_CASE("first- and second-order fronts approach each other under refinement") {
  auto front_gap = [](int m) {
    SimConfig cfg;
    cfg.grid.m_cells = m;
    cfg.epsilon_front = 1e-9;
    cfg.t_end = 0.2;
    cfg.output_cadence = 0.2;
    SimConfig first = cfg;
    first.muscl = false;
    const double f2 = run_scenario(cfg).final_front;
    const double f1 = run_scenario(first).final_front;
    return std::abs(f2 - f1);
  };
  const double coarse = front_gap(300);
  const double fine = front_gap(900);
  CHECK(fine <= coarse + 0.6 / 900.0);
  CHECK(fine < 0.05);
}
