// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/codebook.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hstbeam/errors.hpp"
#include "hstbeam/parallel.hpp"

namespace hstbeam {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_column(std::span<const double> column, const ArrayConfig &cfg) {
  if (column.size() != cfg.element_count)
    throw std::invalid_argument("phase column length must equal the element count");
}

void require_allocation(std::span<const double> allocation, const ArrayConfig &cfg) {
  if (allocation.empty()) return;
  if (allocation.size() != cfg.element_count)
    throw std::invalid_argument("amplitude allocation length must equal the element count");
  for (double f : allocation) {
    if (!std::isfinite(f) || f < 0.0)
      throw std::invalid_argument("amplitude allocation entries must be nonnegative and finite");
  }
}

double parse_field(const std::string &field) {
  const char *begin = field.data();
  const char *end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("malformed numeric field '" + field + "'");
  return value;
}

bool try_parse_row(const std::string &line, std::vector<double> &row) {
  row.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string field =
        line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      row.push_back(parse_field(field));
    } catch (const std::invalid_argument &) {
      return false;
    }
    if (comma == std::string::npos) return true;
    start = comma + 1;
  }
}

}  // namespace

PhaseMapper::PhaseMapper(std::uint32_t element_count, std::uint32_t beam_count,
                         std::vector<double> column_major_phases,
                         std::vector<double> beam_center_angles)
    : element_count_(element_count),
      beam_count_(beam_count),
      phases_(std::move(column_major_phases)),
      beam_center_angles_(std::move(beam_center_angles)) {
  if (element_count_ == 0 || beam_count_ == 0)
    throw std::invalid_argument("phase mapper dimensions must be at least 1x1");
  if (phases_.size() != static_cast<std::size_t>(element_count_) * beam_count_)
    throw std::invalid_argument("phase mapper entry count does not match its dimensions");
  if (!beam_center_angles_.empty() && beam_center_angles_.size() != beam_count_)
    throw std::invalid_argument("beam center angle count does not match the beam count");
  for (double p : phases_) {
    if (!std::isfinite(p) || !(p > -kPi && p <= kPi))
      throw std::invalid_argument("phase entries must be finite and wrapped to (-pi, pi]");
  }
}

std::span<const double> PhaseMapper::column(std::uint32_t beam) const {
  if (beam >= beam_count_) throw std::out_of_range("beam index out of range");
  return {phases_.data() + static_cast<std::size_t>(beam) * element_count_, element_count_};
}

double PhaseMapper::phase(std::uint32_t element, std::uint32_t beam) const {
  if (element >= element_count_) throw std::out_of_range("element index out of range");
  return column(beam)[element];
}

double wrap_phase(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("phase must be finite");
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double steering_phase(const ArrayConfig &cfg, double theta) {
  validate(cfg);
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  const double k = 2.0 * kPi / cfg.wavelength;
  return wrap_phase(-k * cfg.spacing * std::cos(theta));
}

PhaseMapper build_phase_mapper(const ArrayConfig &cfg, const BeamGrid &grid) {
  validate(cfg);
  if (grid.beam_count == 0 || grid.center_angles.size() != grid.beam_count)
    throw std::invalid_argument("beam grid is empty or inconsistent");

  const std::uint32_t rows = cfg.element_count;
  std::vector<double> phases(static_cast<std::size_t>(rows) * grid.beam_count);
  for (std::uint32_t i = 0; i < grid.beam_count; ++i) {
    const double beta = steering_phase(cfg, grid.center_angles[i]);
    std::fill_n(phases.begin() + static_cast<std::size_t>(i) * rows, rows, beta);
  }
  return PhaseMapper(rows, grid.beam_count, std::move(phases), grid.center_angles);
}

std::vector<std::complex<double>> steering_vector(double theta, std::span<const double> column,
                                                  const ArrayConfig &cfg) {
  validate(cfg);
  require_column(column, cfg);
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");

  const double k = 2.0 * kPi / cfg.wavelength;
  const double kd_cos = k * cfg.spacing * std::cos(theta);
  std::vector<std::complex<double>> v(cfg.element_count);
  for (std::uint32_t m = 0; m < cfg.element_count; ++m) {
    const double phase = static_cast<double>(m) * (kd_cos + column[m]);
    v[m] = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return v;
}

double beam_weight(std::uint32_t beam, double theta_b, const ArrayConfig &cfg,
                   const BeamGrid &grid, std::span<const double> amplitude_allocation) {
  validate(cfg);
  require_allocation(amplitude_allocation, cfg);
  if (beam >= grid.beam_count) throw std::out_of_range("beam index out of range");
  if (!std::isfinite(theta_b) ||
      !(theta_b >= grid.sector_start && theta_b <= grid.sector_end))
    throw out_of_coverage_error("theta_b lies outside the covered sector");

  double f = 1.0;
  if (!amplitude_allocation.empty()) {
    f = 0.0;
    for (double a : amplitude_allocation) f += a;
  }
  return std::sqrt(f * directivity(cfg, grid.beam_count));
}

std::complex<double> array_factor(std::span<const double> column, double theta,
                                  const ArrayConfig &cfg,
                                  std::span<const double> amplitude_allocation) {
  validate(cfg);
  require_column(column, cfg);
  require_allocation(amplitude_allocation, cfg);
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");

  const double k = 2.0 * kPi / cfg.wavelength;
  const double kd_cos = k * cfg.spacing * std::cos(theta);
  std::complex<double> sum(0.0, 0.0);
  for (std::uint32_t m = 0; m < cfg.element_count; ++m) {
    const double f = amplitude_allocation.empty() ? 1.0 : amplitude_allocation[m];
    const double phase = static_cast<double>(m) * (kd_cos + column[m]);
    sum += f * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum;
}

BeamPattern measure_pattern(std::span<const double> column, const ArrayConfig &cfg,
                            double angular_resolution) {
  validate(cfg);
  require_column(column, cfg);
  if (!std::isfinite(angular_resolution) || angular_resolution <= 0.0)
    throw std::invalid_argument("angular_resolution must be positive and finite");

  const double main_lobe = half_power_beamwidth(cfg, cfg.element_count);
  if (angular_resolution > main_lobe / 20.0)
    throw resolution_error("angular resolution too coarse to resolve the main lobe; need <= " +
                           std::to_string(main_lobe / 20.0) + " rad");

  std::size_t count = static_cast<std::size_t>(std::ceil(kPi / angular_resolution)) - 1;
  while (count > 0 && static_cast<double>(count) * angular_resolution >= kPi) --count;
  if (count < 3) throw resolution_error("too few pattern samples inside (0, pi)");

  BeamPattern pattern;
  pattern.angles.resize(count);
  pattern.normalized_gain.resize(count);
  detail::parallel_for_index(count, [&](std::size_t k) {
    const double theta = static_cast<double>(k + 1) * angular_resolution;
    pattern.angles[k] = theta;
    pattern.normalized_gain[k] = std::norm(array_factor(column, theta, cfg));
  });

  std::size_t peak = 0;
  for (std::size_t k = 1; k < count; ++k) {
    if (pattern.normalized_gain[k] > pattern.normalized_gain[peak]) peak = k;
  }
  const double peak_power = pattern.normalized_gain[peak];
  for (double &g : pattern.normalized_gain) g /= peak_power;
  pattern.peak_angle = pattern.angles[peak];

  // Half-power edges: walk outward from the peak to the first sample below
  // 1/2 and place the crossing by linear interpolation. A side that never
  // drops runs to the domain edge (flat or edge-steered pattern).
  const auto &gain = pattern.normalized_gain;
  const auto &angles = pattern.angles;
  double left = 0.0;
  bool left_found = false;
  for (std::size_t k = peak; k-- > 0;) {
    if (gain[k] < 0.5) {
      if (peak - k < 2)
        throw resolution_error("main lobe spans fewer than two samples on its left side");
      left = angles[k] + (0.5 - gain[k]) * (angles[k + 1] - angles[k]) / (gain[k + 1] - gain[k]);
      left_found = true;
      break;
    }
  }
  double right = kPi;
  bool right_found = false;
  for (std::size_t k = peak + 1; k < count; ++k) {
    if (gain[k] < 0.5) {
      if (k - peak < 2)
        throw resolution_error("main lobe spans fewer than two samples on its right side");
      right = angles[k - 1] +
              (0.5 - gain[k - 1]) * (angles[k] - angles[k - 1]) / (gain[k] - gain[k - 1]);
      right_found = true;
      break;
    }
  }
  pattern.measured_hpbw = (!left_found && !right_found) ? kPi : right - left;

  // Trapezoid over [0, pi] with sin-weighted endpoints contributing zero.
  double integral = 0.0;
  double prev_angle = 0.0;
  double prev_f = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double f = gain[k] * std::sin(angles[k]);
    integral += 0.5 * (prev_f + f) * (angles[k] - prev_angle);
    prev_angle = angles[k];
    prev_f = f;
  }
  integral += 0.5 * prev_f * (kPi - prev_angle);
  pattern.measured_directivity = 2.0 / integral;

  return pattern;
}

void export_phase_mapper_csv(const PhaseMapper &mapper, std::ostream &out) {
  char buffer[64];
  for (std::uint32_t m = 0; m < mapper.element_count(); ++m) {
    for (std::uint32_t i = 0; i < mapper.beam_count(); ++i) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", mapper.phase(m, i));
      if (i > 0) out << ',';
      out << buffer;
    }
    out << '\n';
  }
}

PhaseMapper import_phase_mapper_csv(std::istream &in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> row;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    if (!try_parse_row(line, row)) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw std::invalid_argument("malformed phase mapper row: " + line);
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("phase mapper rows have inconsistent widths");
    rows.push_back(row);
  }
  if (rows.empty()) throw std::invalid_argument("phase mapper CSV contains no data rows");

  const auto element_count = static_cast<std::uint32_t>(rows.size());
  const auto beam_count = static_cast<std::uint32_t>(rows.front().size());
  std::vector<double> phases(static_cast<std::size_t>(element_count) * beam_count);
  for (std::uint32_t m = 0; m < element_count; ++m) {
    for (std::uint32_t i = 0; i < beam_count; ++i) {
      phases[static_cast<std::size_t>(i) * element_count + m] = rows[m][i];
    }
  }
  return PhaseMapper(element_count, beam_count, std::move(phases), {});
}

}  // namespace hstbeam
