// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hstbeam {

/// Linear array family. The directivity constant T is 2 for a broadside
/// array and 4 for an ordinary end-fire array.
enum class ArrayType { kBroadside, kOrdinaryEndFire };

/// Directivity constant T for the given array type.
double directivity_constant(ArrayType type);

/// Physical description of a uniform linear array.
///
/// element_count is the number of radiating elements M. Most closed-form
/// beam metrics take the beam count N as an explicit argument; by default
/// the two are tied (M = N, orthogonal-beam tiling), and element_count only
/// matters where the physical aperture does (steering vectors, patterns).
struct ArrayConfig {
  std::uint32_t element_count = 1;
  double spacing = 0.0;     // element spacing d [m]
  double wavelength = 0.0;  // carrier wavelength lambda [m]
  ArrayType array_type = ArrayType::kBroadside;
  double beamwidth_constant = 2.782;  // C
};

/// Speed of light [m/s], used to derive wavelength from carrier frequency.
inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Convenience constructor: spacing given as a fraction of the wavelength,
/// wavelength derived from the carrier frequency.
ArrayConfig make_array_config(std::uint32_t element_count, double spacing_over_lambda,
                              double carrier_frequency_hz,
                              ArrayType type = ArrayType::kBroadside,
                              double beamwidth_constant = 2.782);

/// Throws std::invalid_argument if any field is non-finite or out of domain.
void validate(const ArrayConfig &cfg);

/// A tiling of the sector into beam_count contiguous beams of equal
/// half-power beamwidth. Beam 0 sits at the low-angle sector edge; the
/// tiling is anchored at pi/2 so the grid is exactly symmetric around
/// broadside. sector_start/sector_end hold pi/2 -/+ alpha/2 as evaluated
/// from sector_width, the values membership tests compare against.
struct BeamGrid {
  std::uint32_t beam_count = 0;       // N
  double half_power_beamwidth = 0.0;  // Theta_h [rad]
  double sector_width = 0.0;          // alpha = N * Theta_h [rad]
  double sector_start = 0.0;          // pi/2 - alpha/2 [rad]
  double sector_end = 0.0;            // pi/2 + alpha/2 [rad]
  std::vector<double> center_angles;  // N center angles, strictly increasing
};

/// Half-power beamwidth Theta_h = C*lambda / (pi*d*N) [rad].
double half_power_beamwidth(const ArrayConfig &cfg, std::uint32_t beam_count);

/// Per-beam directivity D = T*d*N / lambda.
double directivity(const ArrayConfig &cfg, std::uint32_t beam_count);

/// Directivity as a function of beamwidth alone: D = T*C / (pi*Theta_h).
/// The product D * Theta_h = T*C/pi regardless of d and N.
double directivity_from_beamwidth(const ArrayConfig &cfg, double theta_h);

/// Total sector width alpha = C*lambda / (pi*d), independent of N.
double sector_width(const ArrayConfig &cfg);

/// Tile the sector into beam_count beams centered on
/// pi/2 - alpha/2 + (i + 1/2)*Theta_h.
BeamGrid make_beam_grid(const ArrayConfig &cfg, std::uint32_t beam_count);

/// Trade spacing against beam count: d' = d/scale, N' = N*scale.
/// Theta_h and D are preserved (bitwise for power-of-two scales).
/// Throws std::invalid_argument when N*scale is not a positive integer.
std::pair<ArrayConfig, std::uint32_t> dual_transform(const ArrayConfig &cfg,
                                                     std::uint32_t beam_count, double scale);

}  // namespace hstbeam
