#include <catch2/catch_amalgamated.hpp>

#include "heavylayer/state.hpp"

using namespace heavylayer;

namespace {

SimConfig krypton_15cm() {
  SimConfig cfg;  // defaults already mirror the 15 cm scenario
  return cfg;
}

}  // namespace

TEST_CASE("dam-break field carries the configured left and right states") {
  const SimConfig cfg = krypton_15cm();
  const Field field = init_dam_break(cfg);
  REQUIRE(field.size() == 1000);

  const CellState& leftmost = field.front();
  CHECK(leftmost.lower.h == 0.15);
  CHECK(leftmost.upper.h == 1.05);
  CHECK(leftmost.lower.rho == 3.506);
  CHECK(leftmost.upper.rho == 1.29);
  CHECK(leftmost.lower.u == 0.0);

  const CellState& rightmost = field.back();
  CHECK(rightmost.lower.h == 1e-6);
  CHECK(rightmost.upper.h == 1.2);
  CHECK(rightmost.lower.rho == 3.506);
}

TEST_CASE("identical left and right states give a uniform field") {
  SimConfig cfg = krypton_15cm();
  cfg.h1_right = cfg.h1_left;
  cfg.h2_right = cfg.h2_left;
  const Field field = init_dam_break(cfg);
  for (const CellState& c : field) {
    CHECK(c.lower.h == cfg.h1_left);
    CHECK(c.upper.h == cfg.h2_left);
  }
}

TEST_CASE("dam assignment matches the cell-center enumeration") {
  const SimConfig cfg = krypton_15cm();
  const Field field = init_dam_break(cfg);

  // Independent enumeration of cell centers strictly left of the dam.
  int expected_left = 0;
  const double dx = cfg.grid.length / cfg.grid.m_cells;
  for (int i = 0; i < cfg.grid.m_cells; ++i)
    if ((i + 0.5) * dx < cfg.dam_x0) ++expected_left;
  REQUIRE(expected_left == 83);

  int measured_left = 0;
  for (const CellState& c : field)
    if (c.lower.h == cfg.h1_left) ++measured_left;
  CHECK(measured_left == expected_left);
}

TEST_CASE("initial field is piecewise constant over the two configured states") {
  SimConfig cfg = krypton_15cm();
  cfg.u1_init = 0.3;
  const Field field = init_dam_break(cfg);
  for (const CellState& c : field) {
    const bool is_left = c.lower.h == cfg.h1_left && c.upper.h == cfg.h2_left;
    const bool is_right = c.lower.h == std::max(cfg.h1_right, h_min) &&
                          c.upper.h == cfg.h2_right;
    CHECK((is_left || is_right));
    CHECK(c.lower.u == 0.3);
  }
}

TEST_CASE("initial heavy mass matches the nominal total up to dam quantization") {
  const SimConfig cfg = krypton_15cm();
  const Field field = init_dam_break(cfg);
  const double dx = cfg.grid.dx();

  double measured = 0.0;
  for (const CellState& c : field) measured += c.lower.mass() * dx;
  const double nominal = cfg.h1_left * cfg.rho1_init * cfg.dam_x0 +
                         cfg.h1_right * cfg.rho1_init * (cfg.grid.length - cfg.dam_x0);
  CHECK(std::abs(measured - nominal) <= cfg.h1_left * cfg.rho1_init * dx);
}

TEST_CASE("heights below the floor are lifted, non-positive heights rejected") {
  SimConfig cfg = krypton_15cm();
  cfg.h1_right = 1e-9;
  const Field field = init_dam_break(cfg);
  CHECK(field.back().lower.h == h_min);
  CHECK(field.back().lower.rho == cfg.rho1_init);

  cfg.h1_right = 0.0;
  CHECK_THROWS_AS(init_dam_break(cfg), ConfigError);
  cfg.h1_right = -0.1;
  CHECK_THROWS_AS(init_dam_break(cfg), ConfigError);
}

TEST_CASE("config invariants are enforced") {
  SimConfig cfg = krypton_15cm();
  SECTION("cfl bounds") {
    cfg.cfl = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.cfl = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SECTION("dam inside the domain") {
    cfg.dam_x0 = 0.7;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SECTION("front epsilon positive") {
    cfg.epsilon_front = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  SECTION("subcharacteristic condition") {
    cfg.fluid1.theta = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.fluid1.theta = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_CASE("grid accessors") {
  Grid1D grid{Geometry::cylindrical, 0.6, 1000};
  CHECK(grid.dx() == Catch::Approx(6e-4));
  CHECK(grid.cell_center(0) == Catch::Approx(3e-4));
  CHECK(grid.cell_center(999) == Catch::Approx(0.5997));
  for (int i = 0; i < grid.m_cells; i += 97) CHECK(grid.cell_center(i) > 0.0);
}
