// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/array_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hstbeam {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double directivity_constant(ArrayType type) {
  return type == ArrayType::kBroadside ? 2.0 : 4.0;
}

ArrayConfig make_array_config(std::uint32_t element_count, double spacing_over_lambda,
                              double carrier_frequency_hz, ArrayType type,
                              double beamwidth_constant) {
  if (!(carrier_frequency_hz > 0.0) || !std::isfinite(carrier_frequency_hz))
    throw std::invalid_argument("carrier frequency must be positive and finite");
  const double wavelength = kSpeedOfLight / carrier_frequency_hz;
  ArrayConfig cfg{element_count, spacing_over_lambda * wavelength, wavelength, type,
                  beamwidth_constant};
  validate(cfg);
  return cfg;
}

void validate(const ArrayConfig &cfg) {
  if (cfg.element_count < 1) throw std::invalid_argument("element_count must be >= 1");
  if (!std::isfinite(cfg.spacing) || cfg.spacing <= 0.0)
    throw std::invalid_argument("spacing must be positive and finite");
  if (!std::isfinite(cfg.wavelength) || cfg.wavelength <= 0.0)
    throw std::invalid_argument("wavelength must be positive and finite");
  if (!std::isfinite(cfg.beamwidth_constant) || cfg.beamwidth_constant <= 0.0)
    throw std::invalid_argument("beamwidth_constant must be positive and finite");
}

double half_power_beamwidth(const ArrayConfig &cfg, std::uint32_t beam_count) {
  validate(cfg);
  if (beam_count < 1) throw std::invalid_argument("beam_count must be >= 1");
  return cfg.beamwidth_constant * cfg.wavelength /
         (kPi * cfg.spacing * static_cast<double>(beam_count));
}

double directivity(const ArrayConfig &cfg, std::uint32_t beam_count) {
  validate(cfg);
  if (beam_count < 1) throw std::invalid_argument("beam_count must be >= 1");
  return directivity_constant(cfg.array_type) * cfg.spacing * static_cast<double>(beam_count) /
         cfg.wavelength;
}

double directivity_from_beamwidth(const ArrayConfig &cfg, double theta_h) {
  validate(cfg);
  if (!std::isfinite(theta_h) || theta_h <= 0.0)
    throw std::invalid_argument("theta_h must be positive and finite");
  return directivity_constant(cfg.array_type) * cfg.beamwidth_constant / (kPi * theta_h);
}

double sector_width(const ArrayConfig &cfg) {
  validate(cfg);
  return cfg.beamwidth_constant * cfg.wavelength / (kPi * cfg.spacing);
}

BeamGrid make_beam_grid(const ArrayConfig &cfg, std::uint32_t beam_count) {
  const double theta_h = half_power_beamwidth(cfg, beam_count);
  const double alpha = sector_width(cfg);
  const double half_n = 0.5 * static_cast<double>(beam_count);

  BeamGrid grid;
  grid.beam_count = beam_count;
  grid.half_power_beamwidth = theta_h;
  grid.sector_width = alpha;
  grid.sector_start = kPi / 2.0 - 0.5 * alpha;
  grid.sector_end = kPi / 2.0 + 0.5 * alpha;
  grid.center_angles.resize(beam_count);
  // Centers anchored at pi/2 so the grid stays exactly symmetric: beam i
  // spans pi/2 + (i - N/2)*Theta_h to pi/2 + (i + 1 - N/2)*Theta_h.
  for (std::uint32_t i = 0; i < beam_count; ++i) {
    const double offset = (static_cast<double>(i) + 0.5 - half_n) * theta_h;
    grid.center_angles[i] = kPi / 2.0 + offset;
  }
  return grid;
}

std::pair<ArrayConfig, std::uint32_t> dual_transform(const ArrayConfig &cfg,
                                                     std::uint32_t beam_count, double scale) {
  validate(cfg);
  if (beam_count < 1) throw std::invalid_argument("beam_count must be >= 1");
  if (!std::isfinite(scale) || scale <= 0.0)
    throw std::invalid_argument("scale must be positive and finite");

  const double scaled = static_cast<double>(beam_count) * scale;
  const double rounded = std::nearbyint(scaled);
  if (std::fabs(scaled - rounded) > 1e-9 * std::fmax(1.0, std::fabs(scaled)) || rounded < 1.0)
    throw std::invalid_argument("dual_transform: N*scale (" + std::to_string(scaled) +
                                ") is not a positive integer");

  ArrayConfig out = cfg;
  out.spacing = cfg.spacing / scale;
  return {out, static_cast<std::uint32_t>(rounded)};
}

}  // namespace hstbeam
