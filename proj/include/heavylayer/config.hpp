#pragma once

// Flat `key = value` scenario configuration with dotted sections and `#`
// comments. Defaults mirror the krypton dam-break setup; every key can be
// overridden individually (also used by the sweep subcommand).

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "heavylayer/state.hpp"

namespace heavylayer {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': '" + value + "'");
  }
}

inline bool parse_switch(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("invalid switch for key '" + key + "': '" + value +
                    "' (use on/off)");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(key, item));
  }
  return out;
}

}  // namespace detail

// Tracks which defaults are derived from other keys.
struct ConfigBuilder {
  SimConfig cfg;
  bool drag_h0_set = false;
  bool fit_t_max_set = false;
  bool h2_left_set = false;

  void set(const std::string& key, const std::string& value) {
    using detail::parse_list;
    using detail::parse_number;
    using detail::parse_switch;
    if (key == "geometry") {
      if (value == "planar")
        cfg.grid.geometry = Geometry::planar;
      else if (value == "cylindrical")
        cfg.grid.geometry = Geometry::cylindrical;
      else
        throw ConfigError("invalid geometry '" + value + "'");
    } else if (key == "grid.length")
      cfg.grid.length = parse_number(key, value);
    else if (key == "grid.cells" || key == "m_cells")
      cfg.grid.m_cells = static_cast<int>(parse_number(key, value));
    else if (key == "dam.x0")
      cfg.dam_x0 = parse_number(key, value);
    else if (key == "init.h1_left")
      cfg.h1_left = parse_number(key, value);
    else if (key == "init.h1_right")
      cfg.h1_right = parse_number(key, value);
    else if (key == "init.h2_left") {
      cfg.h2_left = parse_number(key, value);
      h2_left_set = true;
    } else if (key == "init.h2_right")
      cfg.h2_right = parse_number(key, value);
    else if (key == "init.rho1")
      cfg.rho1_init = parse_number(key, value);
    else if (key == "init.rho2")
      cfg.rho2_init = parse_number(key, value);
    else if (key == "init.u1")
      cfg.u1_init = parse_number(key, value);
    else if (key == "init.u2")
      cfg.u2_init = parse_number(key, value);
    else if (key == "fluid1.rho_ref")
      cfg.fluid1.rho_ref = parse_number(key, value);
    else if (key == "fluid1.c_phys")
      cfg.fluid1.c_phys = parse_number(key, value);
    else if (key == "fluid1.theta" || key == "theta1")
      cfg.fluid1.theta = parse_number(key, value);
    else if (key == "fluid2.rho_ref")
      cfg.fluid2.rho_ref = parse_number(key, value);
    else if (key == "fluid2.c_phys")
      cfg.fluid2.c_phys = parse_number(key, value);
    else if (key == "fluid2.theta" || key == "theta2")
      cfg.fluid2.theta = parse_number(key, value);
    else if (key == "physics.g")
      cfg.gravity = parse_number(key, value);
    else if (key == "physics.p0")
      cfg.p0 = parse_number(key, value);
    else if (key == "time.cfl")
      cfg.cfl = parse_number(key, value);
    else if (key == "time.t_end")
      cfg.t_end = parse_number(key, value);
    else if (key == "drag.enabled")
      cfg.drag_enabled = parse_switch(key, value);
    else if (key == "drag.a")
      cfg.drag.a = parse_number(key, value);
    else if (key == "drag.b")
      cfg.drag.b = parse_number(key, value);
    else if (key == "drag.c")
      cfg.drag.c = parse_number(key, value);
    else if (key == "drag.h0") {
      cfg.drag.h0 = parse_number(key, value);
      drag_h0_set = true;
    } else if (key == "front.epsilon")
      cfg.epsilon_front = parse_number(key, value);
    else if (key == "scheme.muscl")
      cfg.muscl = parse_switch(key, value);
    else if (key == "output.cadence")
      cfg.output_cadence = parse_number(key, value);
    else if (key == "output.snapshots")
      cfg.snapshot_times = parse_list(key, value);
    else if (key == "fit.t_min")
      cfg.fit_t_min = parse_number(key, value);
    else if (key == "fit.t_max") {
      cfg.fit_t_max = parse_number(key, value);
      fit_t_max_set = true;
    } else
      throw ConfigError("unknown config key '" + key + "'");
  }

  SimConfig finalize() const {
    SimConfig out = cfg;
    if (!drag_h0_set) out.drag.h0 = out.h1_left;
    if (!fit_t_max_set) out.fit_t_max = out.t_end;
    out.validate();
    return out;
  }
};

inline SimConfig parse_config_text(const std::string& text) {
  ConfigBuilder b;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    b.set(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return b.finalize();
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// Single-key override on an already-built config (sweep support). Rejects
// unknown keys with the same diagnostics as the parser.
inline SimConfig apply_override(const SimConfig& base, const std::string& key,
                                const std::string& value) {
  ConfigBuilder b;
  b.cfg = base;
  b.drag_h0_set = true;  // base values already resolved
  b.fit_t_max_set = true;
  b.set(key, value);
  if (key == "init.h1_left" && base.drag.h0 == base.h1_left)
    b.cfg.drag.h0 = b.cfg.h1_left;
  return b.finalize();
}

}  // namespace heavylayer
