// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/beam_optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hstbeam/errors.hpp"
#include "hstbeam/parallel.hpp"

namespace hstbeam {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool is_power_of_two(std::uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Runs one search and converts the thrown-or-infeasible outcomes into a
// sweep status so every grid point yields a row.
template <typename Fill>
void run_sweep_point(const ArrayConfig &cfg, const DeploymentGeometry &geom, double theta_b,
                     const PositioningErrorModel &err, double p_th, std::uint32_t n_max,
                     SweepStatus &status, const Fill &fill) {
  try {
    fill(search_beam_count(cfg, geom, theta_b, err, p_th, n_max));
  } catch (const structural_limit_error &) {
    status = SweepStatus::kStructuralLimit;
  } catch (const out_of_coverage_error &) {
    status = SweepStatus::kOutOfCoverage;
  }
}

}  // namespace

OptimizerResult search_beam_count(const ArrayConfig &cfg, const DeploymentGeometry &geom,
                                  double theta_b, const PositioningErrorModel &err, double p_th,
                                  std::uint32_t n_max) {
  validate(cfg);
  validate(geom);
  validate(err);
  if (!(p_th > 0.0 && p_th < 1.0))
    throw std::invalid_argument("p_th must lie strictly between 0 and 1");
  if (!is_power_of_two(n_max))
    throw std::invalid_argument("n_max must be a power of two");
  if (!std::isfinite(theta_b)) throw std::invalid_argument("theta_b must be finite");

  const BeamGrid sector = make_beam_grid(cfg, 1);
  if (!(theta_b >= sector.sector_start && theta_b <= sector.sector_end))
    throw out_of_coverage_error("theta_b lies outside the covered sector");
  if (theta_b == kPi / 2.0)
    throw structural_limit_error(
        "theta_b = pi/2 sits on a beam boundary at every even beam count; "
        "the probability is capped by the array structure, not by N");

  OptimizerResult result;
  result.constraint_threshold = p_th;
  result.directivity = kNan;
  result.half_power_beamwidth = kNan;

  for (std::uint64_t n = 1; n <= n_max; n *= 2) {
    const auto count = static_cast<std::uint32_t>(n);
    const BeamGrid grid = make_beam_grid(cfg, count);
    const BeamWindow window = beam_window(theta_b, grid, geom);
    const double p = effective_probability(window, err);
    if (n == 1) result.achieved_probability = p;
    if (p < p_th) break;
    result.feasible = true;
    result.optimal_beam_count = count;
    result.achieved_probability = p;
  }

  if (result.feasible) {
    result.directivity = directivity(cfg, result.optimal_beam_count);
    result.half_power_beamwidth = half_power_beamwidth(cfg, result.optimal_beam_count);
  }
  return result;
}

std::string to_string(SweepStatus status) {
  switch (status) {
    case SweepStatus::kOk:
      return "ok";
    case SweepStatus::kInfeasible:
      return "infeasible";
    case SweepStatus::kStructuralLimit:
      return "structural_limit";
    case SweepStatus::kOutOfCoverage:
      return "out_of_coverage";
    case SweepStatus::kUnreachableTarget:
      return "unreachable_target";
  }
  throw std::invalid_argument("unknown sweep status");
}

std::vector<ThetaSweepRow> sweep_directivity_vs_theta(const ArrayConfig &cfg,
                                                      const DeploymentGeometry &geom,
                                                      const PositioningErrorModel &err, double p_th,
                                                      std::uint32_t n_max,
                                                      const std::vector<double> &theta_grid) {
  std::vector<ThetaSweepRow> rows(theta_grid.size());
  detail::parallel_for_index(theta_grid.size(), [&](std::size_t i) {
    ThetaSweepRow &row = rows[i];
    row.theta_b = theta_grid[i];
    row.directivity = kNan;
    row.achieved_probability = kNan;
    run_sweep_point(cfg, geom, row.theta_b, err, p_th, n_max, row.status,
                    [&](const OptimizerResult &result) {
                      row.achieved_probability = result.achieved_probability;
                      if (result.feasible) {
                        row.optimal_beam_count = result.optimal_beam_count;
                        row.directivity = result.directivity;
                      } else {
                        row.status = SweepStatus::kInfeasible;
                      }
                    });
  });
  return rows;
}

std::vector<SpacingSweepRow> sweep_spacing_vs_theta(const ArrayConfig &cfg,
                                                    const DeploymentGeometry &geom,
                                                    const PositioningErrorModel &err, double p_th,
                                                    std::uint32_t n_max, double target_directivity,
                                                    const std::vector<double> &theta_grid) {
  if (!std::isfinite(target_directivity) || target_directivity <= 0.0)
    throw std::invalid_argument("target_directivity must be positive and finite");

  std::vector<SpacingSweepRow> rows(theta_grid.size());
  detail::parallel_for_index(theta_grid.size(), [&](std::size_t i) {
    SpacingSweepRow &row = rows[i];
    row.theta_b = theta_grid[i];
    row.spacing = kNan;
    run_sweep_point(cfg, geom, row.theta_b, err, p_th, n_max, row.status,
                    [&](const OptimizerResult &result) {
                      if (result.feasible) {
                        row.optimal_beam_count = result.optimal_beam_count;
                        row.spacing = target_directivity * cfg.wavelength /
                                      (directivity_constant(cfg.array_type) *
                                       static_cast<double>(result.optimal_beam_count));
                      } else {
                        row.status = SweepStatus::kUnreachableTarget;
                      }
                    });
  });
  return rows;
}

std::vector<SigmaSweepRow> sweep_directivity_vs_sigma(const ArrayConfig &cfg,
                                                      const DeploymentGeometry &geom,
                                                      double theta_b, std::uint32_t n_max,
                                                      const std::vector<double> &p_th_list,
                                                      const std::vector<double> &sigma_grid) {
  std::vector<SigmaSweepRow> rows(p_th_list.size() * sigma_grid.size());
  detail::parallel_for_index(rows.size(), [&](std::size_t i) {
    SigmaSweepRow &row = rows[i];
    row.p_th = p_th_list[i / sigma_grid.size()];
    row.sigma = sigma_grid[i % sigma_grid.size()];
    row.directivity = kNan;
    run_sweep_point(cfg, geom, theta_b, PositioningErrorModel{row.sigma}, row.p_th, n_max,
                    row.status, [&](const OptimizerResult &result) {
                      if (result.feasible) {
                        row.optimal_beam_count = result.optimal_beam_count;
                        row.directivity = result.directivity;
                      } else {
                        row.status = SweepStatus::kInfeasible;
                      }
                    });
  });
  return rows;
}

std::vector<TradeoffRow> tradeoff_curve(const ArrayConfig &cfg,
                                        const std::vector<double> &theta_h_grid) {
  validate(cfg);
  std::vector<TradeoffRow> rows;
  rows.reserve(theta_h_grid.size());
  for (double theta_h : theta_h_grid) {
    if (!(theta_h > 0.0 && theta_h < kPi))
      throw std::invalid_argument("theta_h grid values must lie in (0, pi)");
    rows.push_back({theta_h, directivity_from_beamwidth(cfg, theta_h)});
  }
  return rows;
}

}  // namespace hstbeam
