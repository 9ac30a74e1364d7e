// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hstbeam/array_model.hpp"

namespace hstbeam {

/// Per-beam, per-element phase excitations: M rows (elements) by N columns
/// (beams). Column i steers the array toward beam_center_angles[i]. Built
/// entirely offline from the array description; byte-identical across runs.
/// Phases are wrapped to (-pi, pi].
class PhaseMapper {
 public:
  PhaseMapper() = default;
  PhaseMapper(std::uint32_t element_count, std::uint32_t beam_count,
              std::vector<double> column_major_phases, std::vector<double> beam_center_angles);

  std::uint32_t element_count() const { return element_count_; }
  std::uint32_t beam_count() const { return beam_count_; }

  /// Phase excitation vector of beam i (length M).
  std::span<const double> column(std::uint32_t beam) const;

  /// Entry for element m (row) of beam i (column), 0-based.
  double phase(std::uint32_t element, std::uint32_t beam) const;

  const std::vector<double> &beam_center_angles() const { return beam_center_angles_; }

 private:
  std::uint32_t element_count_ = 0;
  std::uint32_t beam_count_ = 0;
  std::vector<double> phases_;  // column-major, M * N
  std::vector<double> beam_center_angles_;
};

/// Sampled power pattern of one phase column, with the main-lobe width and
/// the directivity recovered numerically from the samples.
struct BeamPattern {
  std::vector<double> angles;           // sample angles in (0, pi)
  std::vector<double> normalized_gain;  // |AF|^2 / peak, in [0, 1]
  double peak_angle = 0.0;
  double measured_hpbw = 0.0;
  double measured_directivity = 0.0;
};

/// Progressive phase that steers the array to `theta`: wrap(-k*d*cos(theta))
/// with k = 2*pi/lambda, wrapped to (-pi, pi].
double steering_phase(const ArrayConfig &cfg, double theta);

/// Wrap an angle to (-pi, pi].
double wrap_phase(double x);

/// Build the M x N phase mapper for the grid's beam centers. Each column is
/// filled with the constant progressive phase of its center angle.
PhaseMapper build_phase_mapper(const ArrayConfig &cfg, const BeamGrid &grid);

/// Unit-modulus per-element phasors at angle theta for one phase column:
/// element m (1-based) = exp(j*(m-1)*(k*d*cos(theta) + beta[m])).
std::vector<std::complex<double>> steering_vector(double theta, std::span<const double> column,
                                                  const ArrayConfig &cfg);

/// Beam weight w = sqrt(sum(allocation) * D) with D from the closed-form
/// directivity at the grid's beam count. An empty allocation means the
/// uniform split 1/M per element. Entries must be nonnegative.
double beam_weight(std::uint32_t beam, double theta_b, const ArrayConfig &cfg,
                   const BeamGrid &grid, std::span<const double> amplitude_allocation = {});

/// Array factor sum(m) f(m) * exp(j*(m-1)*(k*d*cos(theta) + beta[m])).
/// An empty allocation means unit amplitude on every element.
std::complex<double> array_factor(std::span<const double> column, double theta,
                                  const ArrayConfig &cfg,
                                  std::span<const double> amplitude_allocation = {});

/// Sample |AF|^2 over (0, pi) at the given angular resolution, normalize to
/// the peak, and extract the half-power width (linear interpolation between
/// samples) and the pattern directivity 2 / integral(|AF_n|^2 sin) by
/// composite trapezoid. Throws resolution_error when the sampling cannot
/// resolve the main lobe.
BeamPattern measure_pattern(std::span<const double> column, const ArrayConfig &cfg,
                            double angular_resolution);

/// Write the mapper as CSV: M rows by N columns, radians, 17 significant
/// digits (round-trips doubles exactly).
void export_phase_mapper_csv(const PhaseMapper &mapper, std::ostream &out);

/// Read a mapper matrix back. Lines starting with '#' and a leading
/// non-numeric column-header row are skipped. Center angles are not part of
/// the CSV; the caller re-derives them from the grid when needed.
PhaseMapper import_phase_mapper_csv(std::istream &in);

}  // namespace hstbeam
