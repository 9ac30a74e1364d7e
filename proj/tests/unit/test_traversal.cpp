// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "hstbeam/traversal.hpp"
#include "test_helpers.hpp"

using namespace hstbeam;
using namespace hstbeam::testing;

namespace {

struct Rig {
  ArrayConfig cfg;
  BeamGrid grid;
  PhaseMapper mapper;
  DeploymentGeometry geom;
};

Rig make_rig(std::uint32_t beams) {
  Rig rig{make_array_config(beams, 0.5, 2.4e9), {}, {}, default_geometry()};
  rig.grid = make_beam_grid(rig.cfg, beams);
  rig.mapper = build_phase_mapper(rig.cfg, rig.grid);
  return rig;
}

}  // namespace

TEST_CASE("select_beam routes every angle") {
  const Rig rig = make_rig(64);
  const BeamGrid &grid = rig.grid;

  CHECK(select_beam(grid.center_angles.front(), grid) == 0);
  CHECK(select_beam(kPi / 2.0, grid) == 32);
  CHECK(select_beam(grid.sector_end - 1e-9, grid) == 63);

  // At and past the trailing edge the next cell's first beam takes over.
  CHECK(select_beam(grid.sector_end, grid) == 0);
  CHECK(select_beam(3.0, grid) == 0);
  CHECK(select_beam(kPi - 1e-6, grid) == 0);

  // Before the sector the symmetric wrap picks the last beam.
  CHECK(select_beam(grid.sector_start - 1e-9, grid) == 63);
  CHECK(select_beam(0.1, grid) == 63);

  CHECK_THROWS_AS(select_beam(std::nan(""), grid), std::invalid_argument);
}

TEST_CASE("select_beam agrees with beam_index inside the sector") {
  const Rig rig = make_rig(64);
  std::mt19937_64 rng(91);
  for (std::uint32_t i = 0; i < 64; ++i) {
    for (int k = 0; k < 10; ++k) {
      const double theta =
          rig.grid.sector_start + (i + uniform(rng, 0.02, 0.98)) * rig.grid.half_power_beamwidth;
      CHECK(select_beam(theta, rig.grid) == beam_index(theta, rig.grid));
    }
  }
}

TEST_CASE("select_beam hands out the matching phase column") {
  const Rig rig = make_rig(16);
  const auto [beam, column] = select_beam(rig.grid.center_angles[5], rig.mapper, rig.grid);
  CHECK(beam == 5);
  CHECK(column.data() == rig.mapper.column(5).data());
  CHECK(column.size() == 16);

  const PhaseMapper small = build_phase_mapper(rig.cfg, make_beam_grid(rig.cfg, 8));
  CHECK_THROWS_AS(select_beam(kPi / 2.0, small, rig.grid), std::invalid_argument);
}

TEST_CASE("traversal config validation") {
  TraversalConfig tc{135.0, 1e-3, 0.0, 100.0, {1.0}, 7};
  CHECK_NOTHROW(validate(tc));

  TraversalConfig bad = tc;
  bad.speed = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = tc;
  bad.time_step = -1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = tc;
  bad.end_position = bad.start_position;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = tc;
  bad.error.sigma = -0.5;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("perfect positioning pass is fully effective") {
  const Rig rig = make_rig(16);
  TraversalConfig tc;
  tc.speed = 135.0;
  tc.time_step = 1e-3;
  tc.start_position = position_of_angle(rig.grid.center_angles.front(), rig.geom);
  tc.end_position = position_of_angle(rig.grid.center_angles.back(), rig.geom);
  tc.error.sigma = 0.0;
  tc.seed = 11;

  const auto events = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  REQUIRE(events.size() > 100);

  CHECK(events.front().selected_beam == 0);
  CHECK(events.back().selected_beam == 15);
  CHECK_FALSE(events.front().switched);
  for (const auto &event : events) {
    CHECK(event.effective);
    CHECK(event.estimated_position == event.true_position);
  }

  const TraversalSummary summary = summarize(events, rig.grid, tc.time_step);
  CHECK(summary.effectiveness_rate == 1.0);
  CHECK(summary.switch_count == 15);
  CHECK(rel_close(summary.total_time, events.size() * tc.time_step, 1e-12));
  const double dwell_sum =
      std::accumulate(summary.per_beam_dwell.begin(), summary.per_beam_dwell.end(), 0.0);
  CHECK(rel_close(dwell_sum, summary.total_time, 1e-9));

  // Edge beams own the longest rail footprints.
  CHECK(summary.per_beam_dwell[0] > summary.per_beam_dwell[7]);
  CHECK(summary.per_beam_dwell[15] > summary.per_beam_dwell[7]);
}

TEST_CASE("selection wraps to the next cell past the trailing edge") {
  const Rig rig = make_rig(16);
  TraversalConfig tc;
  tc.speed = 135.0;
  tc.time_step = 1e-3;
  tc.start_position = position_of_angle(rig.grid.sector_end - 0.05, rig.geom);
  tc.end_position = position_of_angle(rig.grid.sector_end - 1e-6, rig.geom) + 5.0;
  tc.error.sigma = 0.0;
  tc.seed = 12;

  const auto events = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  REQUIRE(events.size() > 10);
  CHECK(events.front().selected_beam == 15);
  CHECK(events.back().selected_beam == 0);
  for (const auto &event : events) CHECK(event.effective);
}

TEST_CASE("fixed seeds reproduce the event log bit for bit") {
  const Rig rig = make_rig(64);
  TraversalConfig tc;
  tc.speed = 135.0;
  tc.time_step = 1e-3;
  tc.start_position = -40.0;
  tc.end_position = 40.0;
  tc.error.sigma = 1.5;
  tc.seed = 20260822;

  const auto a = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  const auto b = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].estimated_position == b[k].estimated_position);
    CHECK(a[k].selected_beam == b[k].selected_beam);
  }

  std::ostringstream csv_a;
  std::ostringstream csv_b;
  export_events_csv(a, csv_a);
  export_events_csv(b, csv_b);
  CHECK(csv_a.str() == csv_b.str());

  TraversalConfig other = tc;
  other.seed = 20260823;
  const auto c = simulate_traversal(other, rig.cfg, rig.grid, rig.mapper, rig.geom);
  bool any_differs = false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    any_differs = any_differs || c[k].estimated_position != a[k].estimated_position;
  }
  CHECK(any_differs);
}

TEST_CASE("local effectiveness matches the two-sided window probability") {
  const Rig rig = make_rig(64);
  const double theta0 = 1.1;
  const double p0 = position_of_angle(theta0, rig.geom);

  // A near-stationary run: ~1e5 independent estimates of one position.
  TraversalConfig tc;
  tc.speed = 1e-9;
  tc.time_step = 1e-3;
  tc.start_position = p0;
  tc.end_position = p0 + 1e-7;
  tc.error.sigma = 1.0;
  tc.seed = 404;

  const auto events = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  REQUIRE(events.size() > 50'000);

  const BeamWindow window = exact_beam_window(theta0, rig.grid, rig.geom);
  const double expected = two_sided_interval_probability(window, tc.error);
  const TraversalSummary summary = summarize(events, rig.grid, tc.time_step);
  const double se =
      std::sqrt(expected * (1.0 - expected) / static_cast<double>(events.size()));
  CHECK(std::fabs(summary.effectiveness_rate - expected) <= 3.0 * se);
}

TEST_CASE("summarize rejects bad input") {
  const Rig rig = make_rig(8);
  CHECK_THROWS_AS(summarize({}, rig.grid, 1e-3), std::invalid_argument);

  TraversalEvent stray;
  stray.selected_beam = 8;
  CHECK_THROWS_AS(summarize({stray}, rig.grid, 1e-3), std::invalid_argument);
  TraversalEvent fine;
  CHECK_THROWS_AS(summarize({fine}, rig.grid, 0.0), std::invalid_argument);
}

TEST_CASE("event CSV format") {
  const Rig rig = make_rig(16);
  TraversalConfig tc;
  tc.speed = 135.0;
  tc.time_step = 1e-3;
  tc.start_position = -2.0;
  tc.end_position = -1.5;
  tc.error.sigma = 0.7;
  tc.seed = 5;

  const auto events = simulate_traversal(tc, rig.cfg, rig.grid, rig.mapper, rig.geom);
  REQUIRE(events.size() >= 3);

  std::ostringstream out;
  export_events_csv(events, out, 17);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "time_s,true_pos_m,est_pos_m,true_angle_rad,est_angle_rad,beam_index,effective,switched");

  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    REQUIRE_FALSE(line.empty());
    ++rows;
  }
  CHECK(rows == events.size());

  // 17 significant digits round-trip the doubles exactly.
  std::ostringstream one;
  export_events_csv({events[1]}, one, 17);
  std::istringstream parse(one.str());
  std::getline(parse, line);
  std::getline(parse, line);
  const double est = std::strtod(line.c_str() + line.find(',', line.find(',') + 1) + 1, nullptr);
  CHECK(est == events[1].estimated_position);

  // Booleans render as 0/1.
  CHECK(line.back() == '0');
}
