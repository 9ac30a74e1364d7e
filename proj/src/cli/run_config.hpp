// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hstbeam/array_model.hpp"
#include "hstbeam/error_model.hpp"
#include "hstbeam/rail_geometry.hpp"
#include "hstbeam/traversal.hpp"

namespace hstbeam::cli {

/// Fully validated run parameters. Fields that default to "auto" carry a
/// flag; the owning command resolves them and patches `resolved` before the
/// value is recorded in output headers.
struct RunConfig {
  ArrayConfig array;
  std::uint32_t beam_count = 0;  // grid size for codebook/simulate
  DeploymentGeometry geometry;
  PositioningErrorModel error;

  double p_th = 0.8;
  std::uint32_t n_max = 1024;
  double theta_b = 0.0;

  TraversalConfig traversal;  // start/end placeholders when auto
  bool traversal_auto_start = true;
  bool traversal_auto_end = true;

  std::uint32_t theta_points = 50;
  double theta_min = 0.0;
  double theta_max = 0.0;
  bool theta_auto_min = true;
  bool theta_auto_max = true;

  std::uint32_t sigma_points = 25;
  double sigma_min = 0.1;
  double sigma_max = 10.0;
  std::vector<double> p_th_list{0.7, 0.8, 0.9};

  std::uint32_t theta_h_points = 100;
  double theta_h_min = 0.0;
  double theta_h_max = 0.0;
  bool theta_h_auto_min = true;
  bool theta_h_auto_max = true;
  double target_directivity = 64.0;

  double angular_resolution = 0.0;
  bool resolution_auto = true;

  std::string output_directory = "out";
  int precision = 9;

  nlohmann::json resolved;  // alphabetically-keyed snapshot for CSV headers
};

/// Merge defaults, an optional JSON config file, and dotted-path overrides
/// ("array.element_count=128"), then validate everything at once. On
/// failure returns nullopt with one message per problem in `errors`, each
/// naming the offending dotted path.
std::optional<RunConfig> load_run_config(const std::optional<std::string> &config_path,
                                         const std::vector<std::string> &overrides,
                                         const std::optional<std::string> &output_override,
                                         std::vector<std::string> &errors);

}  // namespace hstbeam::cli
