// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "cli/commands.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/csv_writer.hpp"
#include "cli/run_config.hpp"
#include "hstbeam/beam_optimizer.hpp"
#include "hstbeam/codebook.hpp"
#include "hstbeam/errors.hpp"
#include "hstbeam/traversal.hpp"

namespace hstbeam::cli {

namespace {

using nlohmann::json;

std::vector<double> linspace(double lo, double hi, std::uint32_t points) {
  std::vector<double> grid(points);
  for (std::uint32_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  return grid;
}

void stamp(CsvFile &csv, const std::string &command, const json &resolved) {
  csv.add_metadata("hstbeam " + command);
  csv.add_metadata("config: " + resolved.dump());
}

std::string stamp_text(const std::string &command, const json &resolved) {
  return "# hstbeam " + command + "\n# config: " + resolved.dump() + "\n";
}

std::filesystem::path out_path(const RunConfig &run, const char *name) {
  return std::filesystem::path(run.output_directory) / name;
}

int cmd_tradeoff(const RunConfig &run, std::ostream &out) {
  const double lo = run.theta_h_auto_min ? half_power_beamwidth(run.array, run.n_max)
                                         : run.theta_h_min;
  double hi = run.theta_h_auto_max ? sector_width(run.array) : run.theta_h_max;
  const double pi_open = 3.14159265358979323846 * (1.0 - 1e-9);
  if (run.theta_h_auto_max && hi > pi_open) hi = pi_open;

  json resolved = run.resolved;
  resolved["sweeps"]["theta_h_min_rad"] = lo;
  resolved["sweeps"]["theta_h_max_rad"] = hi;

  const auto rows = tradeoff_curve(run.array, linspace(lo, hi, run.theta_h_points));
  CsvFile csv({"theta_h_rad", "directivity", "product"}, run.precision);
  stamp(csv, "tradeoff", resolved);
  for (const TradeoffRow &row : rows) {
    csv.begin_row();
    csv.add(row.theta_h);
    csv.add(row.directivity);
    csv.add(row.theta_h * row.directivity);
  }
  const auto path = out_path(run, "tradeoff.csv");
  csv.write_atomic(path);
  out << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_optimize(const RunConfig &run, std::ostream &out) {
  const OptimizerResult result = search_beam_count(run.array, run.geometry, run.theta_b,
                                                   run.error, run.p_th, run.n_max);

  CsvFile csv({"theta_b_rad", "p_th", "n_max", "feasible", "optimal_beam_count", "directivity",
               "half_power_beamwidth_rad", "achieved_probability"},
              run.precision);
  stamp(csv, "optimize", run.resolved);
  csv.begin_row();
  csv.add(run.theta_b);
  csv.add(result.constraint_threshold);
  csv.add(run.n_max);
  csv.add(result.feasible);
  csv.add(result.optimal_beam_count);
  csv.add(result.directivity);
  csv.add(result.half_power_beamwidth);
  csv.add(result.achieved_probability);
  const auto path = out_path(run, "optimize.csv");
  csv.write_atomic(path);

  out << "feasible=" << (result.feasible ? 1 : 0) << "\n";
  out << "optimal_beam_count=" << result.optimal_beam_count << "\n";
  out << "directivity=" << format_double(result.directivity, run.precision) << "\n";
  out << "half_power_beamwidth_rad=" << format_double(result.half_power_beamwidth, run.precision)
      << "\n";
  out << "achieved_probability=" << format_double(result.achieved_probability, run.precision)
      << "\n";
  out << "wrote " << path.string() << "\n";
  return 0;
}

// Sweep grids stay strictly inside the sector: the edges themselves have
// degenerate windows and pi/2 is rejected by the search, so auto bounds are
// inset by 1% of the sector width.
std::pair<double, double> resolve_theta_range(const RunConfig &run) {
  const BeamGrid sector = make_beam_grid(run.array, 1);
  const double inset = 0.01 * sector.sector_width;
  const double lo = run.theta_auto_min ? sector.sector_start + inset : run.theta_min;
  const double hi = run.theta_auto_max ? sector.sector_end - inset : run.theta_max;
  return {lo, hi};
}

int cmd_sweep_theta(const RunConfig &run, std::ostream &out) {
  const auto [lo, hi] = resolve_theta_range(run);
  json resolved = run.resolved;
  resolved["sweeps"]["theta_min_rad"] = lo;
  resolved["sweeps"]["theta_max_rad"] = hi;

  const auto rows = sweep_directivity_vs_theta(run.array, run.geometry, run.error, run.p_th,
                                               run.n_max, linspace(lo, hi, run.theta_points));
  CsvFile csv({"theta_b_rad", "status", "optimal_beam_count", "directivity",
               "achieved_probability"},
              run.precision);
  stamp(csv, "sweep-theta", resolved);
  for (const ThetaSweepRow &row : rows) {
    csv.begin_row();
    csv.add(row.theta_b);
    csv.add(to_string(row.status));
    csv.add(row.optimal_beam_count);
    csv.add(row.directivity);
    csv.add(row.achieved_probability);
  }
  const auto path = out_path(run, "sweep_theta.csv");
  csv.write_atomic(path);
  out << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_sweep_spacing(const RunConfig &run, std::ostream &out) {
  const auto [lo, hi] = resolve_theta_range(run);
  json resolved = run.resolved;
  resolved["sweeps"]["theta_min_rad"] = lo;
  resolved["sweeps"]["theta_max_rad"] = hi;

  const auto rows =
      sweep_spacing_vs_theta(run.array, run.geometry, run.error, run.p_th, run.n_max,
                             run.target_directivity, linspace(lo, hi, run.theta_points));
  CsvFile csv({"theta_b_rad", "status", "optimal_beam_count", "spacing_m"}, run.precision);
  stamp(csv, "sweep-spacing", resolved);
  for (const SpacingSweepRow &row : rows) {
    csv.begin_row();
    csv.add(row.theta_b);
    csv.add(to_string(row.status));
    csv.add(row.optimal_beam_count);
    csv.add(row.spacing);
  }
  const auto path = out_path(run, "sweep_spacing.csv");
  csv.write_atomic(path);
  out << "wrote " << path.string() << "\n";
  return 0;
}

int cmd_sweep_sigma(const RunConfig &run, std::ostream &out) {
  const auto rows = sweep_directivity_vs_sigma(
      run.array, run.geometry, run.theta_b, run.n_max, run.p_th_list,
      linspace(run.sigma_min, run.sigma_max, run.sigma_points));
  CsvFile csv({"sigma_m", "p_th", "status", "optimal_beam_count", "directivity"}, run.precision);
  stamp(csv, "sweep-sigma", run.resolved);
  for (const SigmaSweepRow &row : rows) {
    csv.begin_row();
    csv.add(row.sigma);
    csv.add(row.p_th);
    csv.add(to_string(row.status));
    csv.add(row.optimal_beam_count);
    csv.add(row.directivity);
  }
  const auto path = out_path(run, "sweep_sigma.csv");
  csv.write_atomic(path);
  out << "wrote " << path.string() << "\n";
  return 0;
}

double resolve_resolution(const RunConfig &run) {
  return run.resolution_auto ? half_power_beamwidth(run.array, run.array.element_count) / 64.0
                             : run.angular_resolution;
}

int cmd_codebook(const RunConfig &run, std::ostream &out) {
  const BeamGrid grid = make_beam_grid(run.array, run.beam_count);
  const PhaseMapper mapper = build_phase_mapper(run.array, grid);
  const double resolution = resolve_resolution(run);

  json resolved = run.resolved;
  resolved["codebook"]["angular_resolution_rad"] = resolution;

  std::ostringstream mapper_csv;
  mapper_csv << stamp_text("codebook", resolved);
  for (std::uint32_t i = 0; i < grid.beam_count; ++i) {
    if (i > 0) mapper_csv << ',';
    mapper_csv << "beam_" << i;
  }
  mapper_csv << '\n';
  export_phase_mapper_csv(mapper, mapper_csv);
  const auto mapper_path = out_path(run, "codebook_mapper.csv");
  write_file_atomic(mapper_path, mapper_csv.str());
  out << "wrote " << mapper_path.string() << "\n";

  CsvFile patterns({"beam_index", "center_angle_rad", "peak_angle_rad", "measured_hpbw_rad",
                    "measured_directivity", "closed_form_hpbw_rad", "closed_form_directivity"},
                   run.precision);
  stamp(patterns, "codebook", resolved);
  const double closed_hpbw = half_power_beamwidth(run.array, run.array.element_count);
  const double closed_directivity = directivity(run.array, run.array.element_count);
  for (std::uint32_t i = 0; i < grid.beam_count; ++i) {
    const BeamPattern pattern = measure_pattern(mapper.column(i), run.array, resolution);
    patterns.begin_row();
    patterns.add(i);
    patterns.add(grid.center_angles[i]);
    patterns.add(pattern.peak_angle);
    patterns.add(pattern.measured_hpbw);
    patterns.add(pattern.measured_directivity);
    patterns.add(closed_hpbw);
    patterns.add(closed_directivity);
  }
  const auto patterns_path = out_path(run, "codebook_patterns.csv");
  patterns.write_atomic(patterns_path);
  out << "wrote " << patterns_path.string() << "\n";
  return 0;
}

int cmd_simulate(const RunConfig &run, std::ostream &out) {
  const BeamGrid grid = make_beam_grid(run.array, run.beam_count);
  const PhaseMapper mapper = build_phase_mapper(run.array, grid);

  TraversalConfig tc = run.traversal;
  if (run.traversal_auto_start)
    tc.start_position = position_of_angle(grid.center_angles.front(), run.geometry);
  if (run.traversal_auto_end)
    tc.end_position = position_of_angle(grid.center_angles.back(), run.geometry);

  json resolved = run.resolved;
  resolved["traversal"]["start_m"] = tc.start_position;
  resolved["traversal"]["end_m"] = tc.end_position;

  const auto events = simulate_traversal(tc, run.array, grid, mapper, run.geometry);
  const TraversalSummary summary = summarize(events, grid, tc.time_step);

  std::ostringstream events_csv;
  events_csv << stamp_text("simulate", resolved);
  export_events_csv(events, events_csv, run.precision);
  const auto events_path = out_path(run, "traversal_events.csv");
  write_file_atomic(events_path, events_csv.str());
  out << "wrote " << events_path.string() << "\n";

  CsvFile summary_csv({"events", "effectiveness_rate", "switch_count", "total_time_s", "seed"},
                      run.precision);
  stamp(summary_csv, "simulate", resolved);
  summary_csv.begin_row();
  summary_csv.add(static_cast<std::uint64_t>(events.size()));
  summary_csv.add(summary.effectiveness_rate);
  summary_csv.add(summary.switch_count);
  summary_csv.add(summary.total_time);
  summary_csv.add(tc.seed);
  const auto summary_path = out_path(run, "traversal_summary.csv");
  summary_csv.write_atomic(summary_path);
  out << "wrote " << summary_path.string() << "\n";

  CsvFile dwell_csv({"beam_index", "dwell_s"}, run.precision);
  stamp(dwell_csv, "simulate", resolved);
  for (std::uint32_t i = 0; i < grid.beam_count; ++i) {
    dwell_csv.begin_row();
    dwell_csv.add(i);
    dwell_csv.add(summary.per_beam_dwell[i]);
  }
  const auto dwell_path = out_path(run, "traversal_dwell.csv");
  dwell_csv.write_atomic(dwell_path);
  out << "wrote " << dwell_path.string() << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"location-aware beam-forming toolkit for high-speed rail links", "hstbeam"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  auto *config_opt = app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides,
                 "Override a config entry as dotted.path=value (repeatable)");
  auto *out_opt =
      app.add_option("--out", output_dir, "Output directory (overrides output.directory)");

  app.add_subcommand("tradeoff", "Directivity-versus-beamwidth curve");
  app.add_subcommand("optimize", "Single beam-count search at the configured angle");
  app.add_subcommand("sweep-theta", "Optimized directivity across base-station angles");
  app.add_subcommand("sweep-spacing", "Constant-directivity element spacing across angles");
  app.add_subcommand("sweep-sigma", "Optimized directivity across positioning error levels");
  app.add_subcommand("codebook", "Phase mapper export and per-beam pattern measurements");
  app.add_subcommand("simulate", "Rail traversal with location-aware beam selection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  std::vector<std::string> errors;
  const auto run = load_run_config(
      config_opt->count() > 0 ? std::optional<std::string>(config_path) : std::nullopt, overrides,
      out_opt->count() > 0 ? std::optional<std::string>(output_dir) : std::nullopt, errors);
  if (!run) {
    for (const std::string &message : errors) err << "config error: " << message << "\n";
    return 2;
  }

  try {
    std::filesystem::create_directories(run->output_directory);
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "tradeoff") return cmd_tradeoff(*run, out);
    if (command == "optimize") return cmd_optimize(*run, out);
    if (command == "sweep-theta") return cmd_sweep_theta(*run, out);
    if (command == "sweep-spacing") return cmd_sweep_spacing(*run, out);
    if (command == "sweep-sigma") return cmd_sweep_sigma(*run, out);
    if (command == "codebook") return cmd_codebook(*run, out);
    if (command == "simulate") return cmd_simulate(*run, out);
    err << "error: unknown subcommand '" << command << "'\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hstbeam::cli
