// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/traversal.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "hstbeam/rng.hpp"

namespace hstbeam {

namespace {

void require_grid(const BeamGrid &grid) {
  if (grid.beam_count == 0 || grid.center_angles.size() != grid.beam_count)
    throw std::invalid_argument("beam grid is empty or inconsistent");
}

void require_mapper_matches(const PhaseMapper &mapper, const BeamGrid &grid,
                            const ArrayConfig &cfg) {
  if (mapper.beam_count() != grid.beam_count)
    throw std::invalid_argument("phase mapper must have one column per grid beam");
  if (mapper.element_count() != cfg.element_count)
    throw std::invalid_argument("phase mapper row count must equal the element count");
}

}  // namespace

void validate(const TraversalConfig &tc) {
  if (!std::isfinite(tc.speed) || tc.speed <= 0.0)
    throw std::invalid_argument("speed must be positive and finite");
  if (!std::isfinite(tc.time_step) || tc.time_step <= 0.0)
    throw std::invalid_argument("time_step must be positive and finite");
  if (!std::isfinite(tc.start_position) || !std::isfinite(tc.end_position) ||
      !(tc.start_position < tc.end_position))
    throw std::invalid_argument("start_position must lie before end_position");
  validate(tc.error);
}

std::uint32_t select_beam(double theta_b_est, const BeamGrid &grid) {
  require_grid(grid);
  if (!std::isfinite(theta_b_est)) throw std::invalid_argument("theta_b_est must be finite");
  if (theta_b_est < grid.sector_start) return grid.beam_count - 1;
  if (theta_b_est >= grid.sector_end) return 0;
  return beam_index(theta_b_est, grid);
}

std::pair<std::uint32_t, std::span<const double>> select_beam(double theta_b_est,
                                                              const PhaseMapper &mapper,
                                                              const BeamGrid &grid) {
  if (mapper.beam_count() != grid.beam_count)
    throw std::invalid_argument("phase mapper must have one column per grid beam");
  const std::uint32_t beam = select_beam(theta_b_est, grid);
  return {beam, mapper.column(beam)};
}

std::vector<TraversalEvent> simulate_traversal(const TraversalConfig &tc, const ArrayConfig &cfg,
                                               const BeamGrid &grid, const PhaseMapper &mapper,
                                               const DeploymentGeometry &geom) {
  validate(tc);
  validate(cfg);
  validate(geom);
  require_grid(grid);
  require_mapper_matches(mapper, grid, cfg);

  GaussianStream stream(tc.seed, 0);
  std::vector<TraversalEvent> events;
  const double step_length = tc.speed * tc.time_step;
  events.reserve(static_cast<std::size_t>(
                     (tc.end_position - tc.start_position) / step_length) +
                 2);

  for (std::uint64_t k = 0;; ++k) {
    const double position = tc.start_position + static_cast<double>(k) * step_length;
    if (position > tc.end_position) break;

    TraversalEvent event;
    event.time = static_cast<double>(k) * tc.time_step;
    event.true_position = position;
    event.estimated_position = position + tc.error.sigma * stream.next_normal();
    event.true_angle = angle_of_bs(position, geom);
    event.estimated_angle = angle_of_bs(event.estimated_position, geom);
    event.selected_beam = select_beam(event.estimated_angle, grid);
    event.effective = select_beam(event.true_angle, grid) == event.selected_beam;
    event.switched = !events.empty() && event.selected_beam != events.back().selected_beam;
    events.push_back(event);
  }
  return events;
}

TraversalSummary summarize(const std::vector<TraversalEvent> &events, const BeamGrid &grid,
                           double time_step) {
  require_grid(grid);
  if (events.empty()) throw std::invalid_argument("cannot summarize an empty event list");
  if (!std::isfinite(time_step) || time_step <= 0.0)
    throw std::invalid_argument("time_step must be positive and finite");

  TraversalSummary summary;
  summary.per_beam_dwell.assign(grid.beam_count, 0.0);
  std::uint64_t effective_count = 0;
  for (const TraversalEvent &event : events) {
    if (event.selected_beam >= grid.beam_count)
      throw std::invalid_argument("event references a beam outside the grid");
    if (event.effective) ++effective_count;
    if (event.switched) ++summary.switch_count;
    summary.per_beam_dwell[event.selected_beam] += time_step;
  }
  summary.effectiveness_rate =
      static_cast<double>(effective_count) / static_cast<double>(events.size());
  summary.total_time = static_cast<double>(events.size()) * time_step;
  return summary;
}

void export_events_csv(const std::vector<TraversalEvent> &events, std::ostream &out,
                       int precision) {
  if (precision < 1) precision = 1;
  if (precision > 17) precision = 17;
  out << "time_s,true_pos_m,est_pos_m,true_angle_rad,est_angle_rad,beam_index,effective,"
         "switched\n";
  char buffer[64];
  for (const TraversalEvent &event : events) {
    const double fields[] = {event.time, event.true_position, event.estimated_position,
                             event.true_angle, event.estimated_angle};
    for (double value : fields) {
      std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
      out << buffer << ',';
    }
    out << event.selected_beam << ',' << (event.effective ? 1 : 0) << ','
        << (event.switched ? 1 : 0) << '\n';
  }
}

}  // namespace hstbeam
