// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>

#include "hstbeam/array_model.hpp"

namespace hstbeam {

/// Base-station placement relative to the rail.
struct DeploymentGeometry {
  double perpendicular_distance = 0.0;  // h > 0 [m]
  double rail_origin = 0.0;             // rail coordinate of the BS foot [m]
};

void validate(const DeploymentGeometry &geom);

/// The beam containing a given angle, with the along-rail distances from the
/// ray's rail intercept to the beam's two edges. Both distances are
/// nonnegative; their sum is the beam's rail coverage length.
struct BeamWindow {
  std::uint32_t beam_index = 0;
  double left_edge_distance = 0.0;   // gamma_l, toward the smaller-angle edge [m]
  double right_edge_distance = 0.0;  // gamma_r, toward the larger-angle edge [m]
  double coverage_length = 0.0;      // gamma = gamma_l + gamma_r [m]
};

/// Angle of the BS as seen from the train: atan2(h, rail_origin - position),
/// in (0, pi). Exactly pi/2 when the train is abreast of the BS.
double angle_of_bs(double train_position, const DeploymentGeometry &geom);

/// Rail coordinate whose BS angle equals theta: rail_origin - h*cot(theta).
/// Inverse of angle_of_bs; throws unbounded_intercept_error at theta = 0, pi.
double position_of_angle(double theta, const DeploymentGeometry &geom);

/// Index of the beam containing theta_b, 0-based, with the right sector edge
/// clamped to N-1. Throws out_of_coverage_error outside the sector.
std::uint32_t beam_index(double theta_b, const BeamGrid &grid);

/// Small-angle beam window: edge distances r*dtheta with r = h/sin(theta_b).
/// Throws degenerate_geometry_error when sin(theta_b) < 1e-9 and
/// out_of_coverage_error outside the sector.
BeamWindow beam_window(double theta_b, const BeamGrid &grid, const DeploymentGeometry &geom);

/// Exact beam window via the cotangent rail intercepts of the beam edge
/// angles. Oracle for the small-angle approximation in beam_window.
/// Throws unbounded_intercept_error when an edge angle reaches 0 or pi.
BeamWindow exact_beam_window(double theta_b, const BeamGrid &grid, const DeploymentGeometry &geom);

}  // namespace hstbeam
