// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hstbeam/error_model.hpp"

namespace hstbeam {

/// Outcome of the doubling search for the largest beam count that keeps
/// the effective beam-forming probability above the threshold.
struct OptimizerResult {
  bool feasible = false;
  std::uint32_t optimal_beam_count = 0;  // N*, 0 when infeasible
  double directivity = 0.0;
  double half_power_beamwidth = 0.0;
  double achieved_probability = 0.0;  // P at N* when feasible, at N = 1 otherwise
  double constraint_threshold = 0.0;  // P_th
};

/// Maximize directivity subject to effective_probability >= p_th by
/// doubling N over {1, 2, 4, ..., n_max} and returning the last beam count
/// that still satisfies the constraint. Since doubling N splits the
/// containing beam in half, the probability is nonincreasing along the
/// doubling chain and the early exit is equivalent to exhaustive search.
///
/// Preconditions: p_th in (0, 1); n_max a power of two; theta_b strictly
/// inside the sector and != pi/2 (throws structural_limit_error there,
/// out_of_coverage_error outside the sector).
OptimizerResult search_beam_count(const ArrayConfig &cfg, const DeploymentGeometry &geom,
                                  double theta_b, const PositioningErrorModel &err, double p_th,
                                  std::uint32_t n_max);

/// Per-grid-point status for sweep tables. Every requested point produces
/// a row; failures are flagged, never dropped.
enum class SweepStatus { kOk, kInfeasible, kStructuralLimit, kOutOfCoverage, kUnreachableTarget };

/// Fixed text form used in CSV output.
std::string to_string(SweepStatus status);

struct ThetaSweepRow {
  double theta_b = 0.0;
  SweepStatus status = SweepStatus::kOk;
  std::uint32_t optimal_beam_count = 0;
  double directivity = 0.0;
  double achieved_probability = 0.0;
};

struct SpacingSweepRow {
  double theta_b = 0.0;
  SweepStatus status = SweepStatus::kOk;
  std::uint32_t optimal_beam_count = 0;
  double spacing = 0.0;  // d' holding the target directivity at N* [m]
};

struct SigmaSweepRow {
  double sigma = 0.0;
  double p_th = 0.0;
  SweepStatus status = SweepStatus::kOk;
  std::uint32_t optimal_beam_count = 0;
  double directivity = 0.0;
};

struct TradeoffRow {
  double theta_h = 0.0;
  double directivity = 0.0;
};

/// One search per theta grid point at fixed sigma and threshold. Points are
/// evaluated in parallel; rows come back in grid order.
std::vector<ThetaSweepRow> sweep_directivity_vs_theta(const ArrayConfig &cfg,
                                                      const DeploymentGeometry &geom,
                                                      const PositioningErrorModel &err, double p_th,
                                                      std::uint32_t n_max,
                                                      const std::vector<double> &theta_grid);

/// For each theta grid point, the spacing d' = target_directivity*lambda /
/// (T*N*) that holds the directivity constant at the searched beam count.
std::vector<SpacingSweepRow> sweep_spacing_vs_theta(const ArrayConfig &cfg,
                                                    const DeploymentGeometry &geom,
                                                    const PositioningErrorModel &err, double p_th,
                                                    std::uint32_t n_max, double target_directivity,
                                                    const std::vector<double> &theta_grid);

/// One search per (sigma, p_th) cell at a fixed angle. Cells are evaluated
/// in parallel; rows are grouped by threshold, then ordered by sigma.
std::vector<SigmaSweepRow> sweep_directivity_vs_sigma(const ArrayConfig &cfg,
                                                      const DeploymentGeometry &geom, double theta_b,
                                                      std::uint32_t n_max,
                                                      const std::vector<double> &p_th_list,
                                                      const std::vector<double> &sigma_grid);

/// Directivity-versus-beamwidth curve, D = T*C/(pi*Theta_h) per grid point.
/// Grid values must lie in (0, pi).
std::vector<TradeoffRow> tradeoff_curve(const ArrayConfig &cfg,
                                        const std::vector<double> &theta_h_grid);

}  // namespace hstbeam
