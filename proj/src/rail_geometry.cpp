// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/rail_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hstbeam/errors.hpp"

namespace hstbeam {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinSine = 1e-9;

void require_grid(const BeamGrid &grid) {
  if (grid.beam_count == 0 || grid.center_angles.size() != grid.beam_count)
    throw std::invalid_argument("beam grid is empty or inconsistent");
  if (!(grid.half_power_beamwidth > 0.0))
    throw std::invalid_argument("beam grid has nonpositive beamwidth");
}

// Fractional beam coordinate of theta in the pi/2-anchored tiling; beam i
// covers [i, i+1). Exact at theta = pi/2 for every N.
double beam_coordinate(double theta, const BeamGrid &grid) {
  return (theta - kPi / 2.0) / grid.half_power_beamwidth +
         0.5 * static_cast<double>(grid.beam_count);
}

std::uint32_t clamped_index(double theta, const BeamGrid &grid) {
  const double t = std::floor(beam_coordinate(theta, grid));
  if (t <= 0.0) return 0;
  const double last = static_cast<double>(grid.beam_count - 1);
  return t >= last ? grid.beam_count - 1 : static_cast<std::uint32_t>(t);
}

void require_in_sector(double theta_b, const BeamGrid &grid) {
  if (!(theta_b >= grid.sector_start && theta_b <= grid.sector_end))
    throw out_of_coverage_error("angle " + std::to_string(theta_b) +
                                " rad is outside the covered sector [" +
                                std::to_string(grid.sector_start) + ", " +
                                std::to_string(grid.sector_end) + "]");
}

// Rail intercept of the ray at angle theta, relative to the BS foot.
double intercept_offset(double theta, double h) { return h * std::cos(theta) / std::sin(theta); }

}  // namespace

void validate(const DeploymentGeometry &geom) {
  if (!std::isfinite(geom.perpendicular_distance) || geom.perpendicular_distance <= 0.0)
    throw std::invalid_argument("perpendicular_distance must be positive and finite");
  if (!std::isfinite(geom.rail_origin))
    throw std::invalid_argument("rail_origin must be finite");
}

double angle_of_bs(double train_position, const DeploymentGeometry &geom) {
  validate(geom);
  if (!std::isfinite(train_position))
    throw std::invalid_argument("train_position must be finite");
  return std::atan2(geom.perpendicular_distance, geom.rail_origin - train_position);
}

double position_of_angle(double theta, const DeploymentGeometry &geom) {
  validate(geom);
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= kPi || std::sin(theta) < 1e-12)
    throw unbounded_intercept_error("angle " + std::to_string(theta) +
                                    " rad has no rail intercept");
  return geom.rail_origin - intercept_offset(theta, geom.perpendicular_distance);
}

std::uint32_t beam_index(double theta_b, const BeamGrid &grid) {
  require_grid(grid);
  if (!std::isfinite(theta_b)) throw std::invalid_argument("theta_b must be finite");
  require_in_sector(theta_b, grid);
  return clamped_index(theta_b, grid);
}

BeamWindow beam_window(double theta_b, const BeamGrid &grid, const DeploymentGeometry &geom) {
  validate(geom);
  const std::uint32_t i = beam_index(theta_b, grid);

  const double s = std::sin(theta_b);
  if (!(s >= kMinSine))
    throw degenerate_geometry_error("sin(theta_b) vanishes at theta_b = " +
                                    std::to_string(theta_b) + " rad");
  const double r = geom.perpendicular_distance / s;

  const double half_n = 0.5 * static_cast<double>(grid.beam_count);
  const double w = theta_b - kPi / 2.0;
  const double lo = (static_cast<double>(i) - half_n) * grid.half_power_beamwidth;
  const double hi = (static_cast<double>(i) + 1.0 - half_n) * grid.half_power_beamwidth;

  BeamWindow window;
  window.beam_index = i;
  window.left_edge_distance = std::max(0.0, r * (w - lo));
  window.right_edge_distance = std::max(0.0, r * (hi - w));
  window.coverage_length = window.left_edge_distance + window.right_edge_distance;
  return window;
}

BeamWindow exact_beam_window(double theta_b, const BeamGrid &grid,
                             const DeploymentGeometry &geom) {
  validate(geom);
  const std::uint32_t i = beam_index(theta_b, grid);

  const double half_n = 0.5 * static_cast<double>(grid.beam_count);
  const double lo = kPi / 2.0 + (static_cast<double>(i) - half_n) * grid.half_power_beamwidth;
  const double hi = lo + grid.half_power_beamwidth;
  for (double edge : {lo, hi, theta_b}) {
    if (!(edge > 0.0 && edge < kPi) || std::sin(edge) < 1e-12)
      throw unbounded_intercept_error("beam edge angle " + std::to_string(edge) +
                                      " rad has no rail intercept");
  }

  const double h = geom.perpendicular_distance;
  const double u_b = intercept_offset(theta_b, h);

  BeamWindow window;
  window.beam_index = i;
  window.left_edge_distance = std::max(0.0, intercept_offset(lo, h) - u_b);
  window.right_edge_distance = std::max(0.0, u_b - intercept_offset(hi, h));
  window.coverage_length = window.left_edge_distance + window.right_edge_distance;
  return window;
}

}  // namespace hstbeam
