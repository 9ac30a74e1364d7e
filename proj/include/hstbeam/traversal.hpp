// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hstbeam/codebook.hpp"
#include "hstbeam/error_model.hpp"

namespace hstbeam {

/// A constant-speed pass along the rail with noisy position estimates.
struct TraversalConfig {
  double speed = 135.0;      // [m/s]
  double time_step = 0.001;  // [s]
  double start_position = 0.0;
  double end_position = 0.0;
  PositioningErrorModel error;
  std::uint64_t seed = 0;
};

void validate(const TraversalConfig &tc);

/// One simulation step. `effective` is recomputed from the true position,
/// never from the estimate.
struct TraversalEvent {
  double time = 0.0;
  double true_position = 0.0;
  double estimated_position = 0.0;
  double true_angle = 0.0;
  double estimated_angle = 0.0;
  std::uint32_t selected_beam = 0;  // also the mapper column in use
  bool effective = false;
  bool switched = false;
};

struct TraversalSummary {
  double effectiveness_rate = 0.0;
  std::uint64_t switch_count = 0;
  std::vector<double> per_beam_dwell;  // seconds per beam, indexed by beam
  double total_time = 0.0;
};

/// Column index the selector routes an estimated angle to. Total over all
/// angles: in-sector angles map to their containing beam (ties to the
/// higher index), angles at or past the trailing sector edge wrap to beam 0
/// (the next base station's first beam), angles before the sector map to
/// the last beam symmetrically.
std::uint32_t select_beam(double theta_b_est, const BeamGrid &grid);

/// Same routing plus the phase column the selection activates. The mapper
/// must have one column per grid beam.
std::pair<std::uint32_t, std::span<const double>> select_beam(double theta_b_est,
                                                              const PhaseMapper &mapper,
                                                              const BeamGrid &grid);

/// Step the train from start to end, drawing one position error per step
/// from the seeded stream, selecting the beam from the estimated angle and
/// judging effectiveness against the true one. Deterministic for a fixed
/// seed. The mapper must match the grid (column per beam).
std::vector<TraversalEvent> simulate_traversal(const TraversalConfig &tc, const ArrayConfig &cfg,
                                               const BeamGrid &grid, const PhaseMapper &mapper,
                                               const DeploymentGeometry &geom);

/// Aggregate rates, switch count and per-beam dwell times (one entry per
/// grid beam; each event contributes one time step to its selected beam).
/// Throws std::invalid_argument on an empty event list.
TraversalSummary summarize(const std::vector<TraversalEvent> &events, const BeamGrid &grid,
                           double time_step);

/// Event log as CSV rows: time_s, true_pos_m, est_pos_m, true_angle_rad,
/// est_angle_rad, beam_index, effective, switched.
void export_events_csv(const std::vector<TraversalEvent> &events, std::ostream &out,
                       int precision = 17);

}  // namespace hstbeam
