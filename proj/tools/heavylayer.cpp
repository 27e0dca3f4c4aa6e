// Batch CLI for the two-layer heavy-gas dispersal solver: scenario runs,
// box-model comparison reports, and parameter sweeps.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "heavylayer/config.hpp"
#include "heavylayer/csv.hpp"
#include "heavylayer/diagnostics.hpp"
#include "heavylayer/plot.hpp"
#include "heavylayer/runner.hpp"

namespace fs = std::filesystem;
using namespace heavylayer;

namespace {

constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

std::string format_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", t);
  return buf;
}

std::vector<double> parse_time_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (!item.empty()) out.push_back(detail::parse_number("snapshot-times", item));
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& snapshot_times) {
  SimConfig cfg = load_config(config_path);
  if (!snapshot_times.empty()) {
    const auto extra = parse_time_list(snapshot_times);
    cfg.snapshot_times.insert(cfg.snapshot_times.end(), extra.begin(), extra.end());
  }

  fs::create_directories(out_dir);
  SnapshotSink sink = [&](double t, const Field& field) {
    const fs::path path = fs::path(out_dir) / ("snapshot_t" + format_time(t) + ".csv");
    std::ofstream out(path);
    write_snapshot(out, field, cfg.grid);
    std::cout << "wrote " << path.string() << "\n";
  };

  const RunResult res = run_scenario(cfg, sink);

  const fs::path trace_path = fs::path(out_dir) / "front_trace.csv";
  {
    std::ofstream out(trace_path);
    write_front_trace(out, res.rows);
  }

  std::cout << "scenario: " << config_path << "\n"
            << "steps: " << res.n_steps << "\n";
  if (std::isnan(res.fitted_froude))
    std::cout << "fitted Froude: n/a (trace too short for the fit window)\n";
  else
    std::printf("fitted Froude (t in [%.3g, %.3g] s): %.4f\n", cfg.fit_t_min,
                cfg.fit_t_max, res.fitted_froude);
  std::printf("final front position: %.6g m\n", res.final_front);
  std::printf("mass conservation drift: lower %.3e, upper %.3e (relative)\n",
              res.mass_drift_lower, res.mass_drift_upper);
  std::cout << "wrote " << trace_path.string() << "\n";
  return 0;
}

int cmd_compare(const std::string& trace_path, const std::string& ref_path,
                double rc, double h0, double rho_gas, double rho_air, double g,
                double volume, double a0, double t_min, double t_max,
                const std::string& plot_path, bool scaled) {
  const std::vector<TraceRow> rows = read_trace_file(trace_path);
  if (rows.size() < 3) throw ConfigError("trace '" + trace_path + "' is too short");

  BoxModelParams p;
  p.v_gas = volume > 0.0 ? volume : std::numbers::pi * rc * rc * h0;
  p.rho_gas = rho_gas;
  p.rho_air = rho_air;
  p.g = g;
  p.a0 = a0 > 0.0 ? a0 : std::numbers::pi * rc * rc;

  FrontTrace trace;
  trace.h0 = h0;
  for (const TraceRow& r : rows) trace.samples.push_back({r.t, r.r});
  if (t_max <= 0.0) t_max = rows.back().t;

  const double froude = fit_froude(trace, p, t_min, t_max);
  p.froude = froude;
  const double slope = box_model_slope(p);

  double rss = 0.0;
  std::size_t n = 0;
  std::vector<double> ts, as;
  for (const TraceRow& r : rows)
    if (r.t >= t_min - 1e-12 && r.t <= t_max + 1e-12) {
      ts.push_back(r.t);
      as.push_back(r.a);
    }
  const LinearFit fit = linear_fit(ts, as);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double resid = as[i] - (fit.slope * ts[i] + fit.intercept);
    rss += resid * resid;
    ++n;
  }

  std::cout << "trace: " << trace_path << " (" << rows.size() << " rows)\n";
  std::printf("fitted Froude: %.4f (window [%.3g, %.3g] s)\n", froude, t_min, t_max);
  std::printf("box-model slope dA/dt: %.6g m^2/s\n", slope);
  std::printf("area fit R^2: %.6f, residual RMS: %.4g m^2\n", fit.r_squared,
              std::sqrt(rss / n));

  std::vector<TraceRow> ref;
  if (!ref_path.empty()) {
    ref = read_trace_file(ref_path);
    double worst = 0.0, worst_t = 0.0;
    for (const TraceRow& r : rows) {
      if (r.t < t_min - 1e-12 || r.t > t_max + 1e-12) continue;
      if (r.t < ref.front().t || r.t > ref.back().t) continue;
      std::size_t j = 1;
      while (j + 1 < ref.size() && ref[j].t < r.t) ++j;
      const TraceRow& lo = ref[j - 1];
      const TraceRow& hi = ref[j];
      const double w = (r.t - lo.t) / (hi.t - lo.t);
      const double r_ref = lo.r + w * (hi.r - lo.r);
      if (r_ref > 0.0) {
        const double rel = std::abs(r.r - r_ref) / r_ref;
        if (rel > worst) {
          worst = rel;
          worst_t = r.t;
        }
      }
    }
    std::printf("max |R - R_ref|/R_ref over window: %.2f%% (at t = %.3g s)\n",
                100.0 * worst, worst_t);
  }

  std::vector<PlotSeries> series;
  if (scaled) {
    PlotSeries sim{"trace (scaled)", {}};
    for (const TraceRow& r : rows)
      sim.points.emplace_back(r.tau, std::numbers::pi * r.lambda * r.lambda);
    series.push_back(std::move(sim));
    if (!ref.empty()) {
      PlotSeries rs{"reference (scaled)", {}};
      for (const TraceRow& r : ref)
        rs.points.emplace_back(r.tau, std::numbers::pi * r.lambda * r.lambda);
      series.push_back(std::move(rs));
    }
  } else {
    PlotSeries sim{"trace", {}};
    for (const TraceRow& r : rows) sim.points.emplace_back(r.t, r.r);
    series.push_back(std::move(sim));
    PlotSeries box{"box model", {}};
    for (const TraceRow& r : rows)
      box.points.emplace_back(
          r.t, std::sqrt(box_model_area(r.t, p) / std::numbers::pi));
    series.push_back(std::move(box));
    if (!ref.empty()) {
      PlotSeries rs{"reference", {}};
      for (const TraceRow& r : ref) rs.points.emplace_back(r.t, r.r);
      series.push_back(std::move(rs));
    }
  }
  if (write_svg_plot(plot_path, "front trajectory",
                     scaled ? "tau [-]" : "t [s]",
                     scaled ? "Sigma [-]" : "R [m]", series))
    std::cout << "wrote " << plot_path << "\n";
  else
    std::cerr << "warning: could not write plot file " << plot_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& key,
              const std::string& values_csv, const std::string& out_dir) {
  const SimConfig base = load_config(config_path);

  std::vector<std::string> values;
  std::stringstream ss(values_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (!item.empty()) values.push_back(item);
  }
  if (!values.empty()) {
    // Validate the key once up front so unknown keys fail fast.
    apply_override(base, key, values.front());
  }

  fs::create_directories(out_dir);
  auto per_run = [&](std::size_t, const std::string& value, const RunResult& res) {
    const fs::path dir = fs::path(out_dir) / (key + "=" + value);
    fs::create_directories(dir);
    std::ofstream out(dir / "front_trace.csv");
    write_front_trace(out, res.rows);
  };

  const auto entries =
      sweep_scenarios(base, key, values, sweep_thread_cap(), per_run);

  const fs::path summary_path = fs::path(out_dir) / "sweep_summary.csv";
  std::ofstream summary(summary_path);
  summary << key << ",froude[-],final_front[m]\n";
  for (const SweepEntry& e : entries) {
    if (!e.error.empty()) throw ConfigError("sweep value " + e.value + ": " + e.error);
    char fr[32], ff[32];
    std::snprintf(fr, sizeof(fr), "%.10g", e.fitted_froude);
    std::snprintf(ff, sizeof(ff), "%.10g", e.final_front);
    summary << e.value << ',' << fr << ',' << ff << '\n';
    std::printf("%s = %-10s Fr = %-10.4g front = %.4g m\n", key.c_str(),
                e.value.c_str(), e.fitted_froude, e.final_front);
  }
  std::cout << "wrote " << summary_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-layer shallow water solver for heavy-gas dispersal"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", snapshot_times;
  auto* run = app.add_subcommand("run", "integrate a scenario config");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: out)");
  run->add_option("--snapshot-times", snapshot_times,
                  "comma-separated field snapshot instants [s]");

  std::string trace_path, ref_path, plot_path = "compare.svg";
  double rc = 0.05, h0 = 0.15, rho_gas = 3.506, rho_air = 1.29, g = 9.81;
  double volume = 0.0, a0 = 0.0, t_min = 0.1, t_max = 0.0;
  bool scaled = false;
  auto* compare = app.add_subcommand("compare", "fit a trace against the box model");
  compare->add_option("trace", trace_path, "front-trace CSV")->required();
  compare->add_option("--ref", ref_path, "reference trace CSV to overlay");
  compare->add_option("--rc", rc, "initial column radius [m]");
  compare->add_option("--h0", h0, "initial column height [m]");
  compare->add_option("--rho-gas", rho_gas, "released gas density [kg/m3]");
  compare->add_option("--rho-air", rho_air, "ambient density [kg/m3]");
  compare->add_option("--g", g, "gravity [m/s2]");
  compare->add_option("--volume", volume, "released volume [m3] (default pi rc^2 h0)");
  compare->add_option("--a0", a0, "initial area [m2] (default pi rc^2)");
  compare->add_option("--t-min", t_min, "fit window start [s]");
  compare->add_option("--t-max", t_max, "fit window end [s] (default: trace end)");
  compare->add_option("--out", plot_path, "plot file (SVG)");
  compare->add_flag("--scaled", scaled, "plot scaled coordinates (collapse view)");

  std::string sweep_key, sweep_values, sweep_out = "sweep";
  auto* sweep = app.add_subcommand("sweep", "run a scenario over parameter values");
  sweep->add_option("config", config_path, "base scenario config")->required();
  sweep->add_option("--key", sweep_key, "config key to vary")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--out-dir", sweep_out, "output directory (default: sweep)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, snapshot_times);
    if (compare->parsed())
      return cmd_compare(trace_path, ref_path, rc, h0, rho_gas, rho_air, g, volume,
                         a0, t_min, t_max, plot_path, scaled);
    if (sweep->parsed()) return cmd_sweep(config_path, sweep_key, sweep_values, sweep_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const SimulationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_config_error;
  }
  return 0;
}
