#pragma once

// CSV formats for front traces and field snapshots. Numbers are written with
// a fixed "%.10g" format so reruns are byte-identical.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavylayer/state.hpp"

namespace heavylayer {

struct TraceRow {
  double t = 0.0;       // [s]
  double r = 0.0;       // front position [m]
  double a = 0.0;       // pi R^2 [m2]
  double lambda = 0.0;  // scaled radius [-]
  double tau = 0.0;     // scaled time [-]
};

inline constexpr const char* trace_header = "t[s],R[m],A[m2],lambda[-],tau[-]";
inline constexpr const char* snapshot_header =
    "x[m],h1[m],rho1[kg/m3],u1[m/s],h2[m],rho2[kg/m3],u2[m/s]";

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline void write_front_trace(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << trace_header << '\n';
  for (const TraceRow& r : rows)
    out << detail::fmt(r.t) << ',' << detail::fmt(r.r) << ',' << detail::fmt(r.a)
        << ',' << detail::fmt(r.lambda) << ',' << detail::fmt(r.tau) << '\n';
}

inline void write_snapshot(std::ostream& out, const Field& field, const Grid1D& grid) {
  out << snapshot_header << '\n';
  for (std::size_t i = 0; i < field.size(); ++i) {
    const CellState& c = field[i];
    out << detail::fmt(grid.cell_center(static_cast<int>(i))) << ','
        << detail::fmt(c.lower.h) << ',' << detail::fmt(c.lower.rho) << ','
        << detail::fmt(c.lower.u) << ',' << detail::fmt(c.upper.h) << ','
        << detail::fmt(c.upper.rho) << ',' << detail::fmt(c.upper.u) << '\n';
  }
}

// Reads a front-trace CSV. Only the first two columns (t, R) are required;
// missing area/scaled columns are recomputed or zeroed. Reference traces
// therefore may carry just `t,R` pairs.
inline std::vector<TraceRow> read_trace(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find("t[") != std::string::npos || line.find("t,") == 0) continue;
      // fall through: headerless file
    }
    std::stringstream ss(line);
    std::string item;
    std::vector<double> vals;
    while (std::getline(ss, item, ',')) {
      try {
        vals.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw std::runtime_error("malformed trace row: '" + line + "'");
      }
    }
    if (vals.size() < 2)
      throw std::runtime_error("trace rows need at least t and R columns");
    TraceRow r;
    r.t = vals[0];
    r.r = vals[1];
    r.a = vals.size() > 2 ? vals[2] : 3.14159265358979323846 * r.r * r.r;
    r.lambda = vals.size() > 3 ? vals[3] : 0.0;
    r.tau = vals.size() > 4 ? vals[4] : 0.0;
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<TraceRow> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace file '" + path + "'");
  return read_trace(in);
}

}  // namespace heavylayer
