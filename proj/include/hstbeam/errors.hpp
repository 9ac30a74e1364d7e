// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <stdexcept>
#include <string>

namespace hstbeam {

// Requested angle lies outside the sector tiled by the beam grid.
class out_of_coverage_error : public std::domain_error {
 public:
  explicit out_of_coverage_error(const std::string &msg) : std::domain_error(msg) {}
};

// sin(theta_b) below tolerance: the ray runs (almost) parallel to the rail.
class degenerate_geometry_error : public std::domain_error {
 public:
  explicit degenerate_geometry_error(const std::string &msg) : std::domain_error(msg) {}
};

// A beam edge angle touches 0 or pi, so its rail intercept is unbounded.
class unbounded_intercept_error : public std::domain_error {
 public:
  explicit unbounded_intercept_error(const std::string &msg) : std::domain_error(msg) {}
};

// theta_b = pi/2: the edge distances are pinned by the deployment geometry,
// not by the beam count, so the beam-count search cannot improve them.
class structural_limit_error : public std::domain_error {
 public:
  explicit structural_limit_error(const std::string &msg) : std::domain_error(msg) {}
};

// Angular sampling too coarse to resolve the main lobe.
class resolution_error : public std::invalid_argument {
 public:
  explicit resolution_error(const std::string &msg) : std::invalid_argument(msg) {}
};

}  // namespace hstbeam
