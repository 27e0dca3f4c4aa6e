#pragma once

// Scenario orchestration: the time loop with cadence-aligned trace rows and
// snapshot instants, summary statistics, and the parallel parameter sweep.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "heavylayer/config.hpp"
#include "heavylayer/csv.hpp"
#include "heavylayer/diagnostics.hpp"
#include "heavylayer/scheme.hpp"
#include "heavylayer/state.hpp"

namespace heavylayer {

struct RunResult {
  std::vector<TraceRow> rows;
  FrontTrace trace;
  double fitted_froude = std::numeric_limits<double>::quiet_NaN();
  double final_front = 0.0;
  double mass_drift_lower = 0.0;  // relative, geometry-weighted
  double mass_drift_upper = 0.0;
  long n_steps = 0;
  Field field;
};

// Box-model parameters implied by a scenario: cylinder of radius x0 and
// height h1_left released into the ambient layer.
inline BoxModelParams box_params_for(const SimConfig& cfg) {
  BoxModelParams p;
  p.v_gas = std::numbers::pi * cfg.dam_x0 * cfg.dam_x0 * cfg.h1_left;
  p.rho_gas = cfg.rho1_init;
  p.rho_air = cfg.rho2_init;
  p.g = cfg.gravity;
  p.a0 = std::numbers::pi * cfg.dam_x0 * cfg.dam_x0;
  return p;
}

namespace detail {

// Geometry weight for conservation accounting: dx in planar geometry,
// r_i dx in cylindrical (the scheme telescopes exactly in both).
inline double cell_weight(const Grid1D& grid, int i) {
  const double w = grid.dx();
  return grid.geometry == Geometry::cylindrical ? grid.cell_center(i) * w : w;
}

inline std::pair<double, double> layer_totals(const Field& field, const Grid1D& grid) {
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double w = cell_weight(grid, static_cast<int>(i));
    m1 += field[i].lower.mass() * w;
    m2 += field[i].upper.mass() * w;
  }
  return {m1, m2};
}

}  // namespace detail

using SnapshotSink = std::function<void(double t, const Field&)>;

// Integrates a scenario from t = 0 to t_end, emitting one trace row at t = 0
// and at every output cadence instant (plus t_end when not aligned).
// Snapshot instants are hit exactly by clipping dt.
inline RunResult run_scenario(const SimConfig& cfg,
                              const SnapshotSink& snapshot_sink = {}) {
  cfg.validate();
  constexpr double tol = 1e-9;

  RunResult res;
  res.field = init_dam_break(cfg);
  res.trace.h0 = cfg.h1_left;

  const double sr = scale_radius_factor(cfg.dam_x0, cfg.h1_left);
  const double st =
      scale_time_factor(cfg.dam_x0, cfg.h1_left, cfg.rho1_init, cfg.rho2_init,
                        cfg.gravity);

  std::vector<double> snaps = cfg.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  std::size_t next_snap = 0;

  auto emit_row = [&](double t_nominal) {
    const double r = front_position(res.field, cfg.grid, cfg.epsilon_front);
    TraceRow row;
    row.t = t_nominal;
    row.r = r;
    row.a = std::numbers::pi * r * r;
    row.lambda = sr * r;
    row.tau = st * t_nominal;
    res.rows.push_back(row);
    res.trace.samples.push_back({t_nominal, r});
  };

  const auto [m1_0, m2_0] = detail::layer_totals(res.field, cfg.grid);

  while (next_snap < snaps.size() && snaps[next_snap] < tol) {
    if (snapshot_sink) snapshot_sink(snaps[next_snap], res.field);
    ++next_snap;
  }
  emit_row(0.0);

  double t = 0.0;
  long cadence_index = 1;
  while (t < cfg.t_end - tol) {
    double t_next = std::min(cadence_index * cfg.output_cadence, cfg.t_end);
    if (next_snap < snaps.size() && snaps[next_snap] <= cfg.t_end + tol)
      t_next = std::min(t_next, snaps[next_snap]);
    if (t_next - t > tol) {
      t += step(res.field, t, t_next, cfg);
      ++res.n_steps;
    }
    if (next_snap < snaps.size() && t >= snaps[next_snap] - tol) {
      if (snapshot_sink) snapshot_sink(snaps[next_snap], res.field);
      ++next_snap;
    }
    const double t_cadence = cadence_index * cfg.output_cadence;
    if (t >= t_cadence - tol) {
      emit_row(std::min(t_cadence, cfg.t_end));
      ++cadence_index;
    }
  }
  if (res.rows.back().t < cfg.t_end - tol) emit_row(cfg.t_end);

  const auto [m1_1, m2_1] = detail::layer_totals(res.field, cfg.grid);
  res.mass_drift_lower = std::abs(m1_1 - m1_0) / m1_0;
  res.mass_drift_upper = std::abs(m2_1 - m2_0) / m2_0;
  res.final_front = res.rows.back().r;

  try {
    res.fitted_froude =
        fit_froude(res.trace, box_params_for(cfg), cfg.fit_t_min, cfg.fit_t_max);
  } catch (const std::exception&) {
    // short runs have no fit window; summary reports NaN
  }
  return res;
}

struct SweepEntry {
  std::string value;
  double fitted_froude = std::numeric_limits<double>::quiet_NaN();
  double final_front = 0.0;
  std::string error;  // non-empty when the run failed
};

// One run per value, in parallel worker threads (at most `threads`), results
// reported in value order. per_run, when set, is invoked from worker threads
// once per finished run; runs own their outputs, so sinks must write
// per-value files only.
inline std::vector<SweepEntry> sweep_scenarios(
    const SimConfig& base, const std::string& key,
    const std::vector<std::string>& values, unsigned threads,
    const std::function<void(std::size_t, const std::string&, const RunResult&)>&
        per_run = {}) {
  std::vector<SweepEntry> entries(values.size());
  if (values.empty()) return entries;

  threads = std::max(1u, std::min<unsigned>(threads, values.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= values.size()) return;
      SweepEntry& e = entries[idx];
      e.value = values[idx];
      try {
        const SimConfig cfg = apply_override(base, key, values[idx]);
        const RunResult r = run_scenario(cfg);
        e.fitted_froude = r.fitted_froude;
        e.final_front = r.final_front;
        if (per_run) per_run(idx, values[idx], r);
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  return entries;
}

// Thread cap from the HEAVYLAYER_THREADS environment variable; falls back to
// the hardware concurrency.
inline unsigned sweep_thread_cap() {
  if (const char* env = std::getenv("HEAVYLAYER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace heavylayer
