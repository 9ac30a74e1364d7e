// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "hstbeam/codebook.hpp"
#include "hstbeam/errors.hpp"
#include "test_helpers.hpp"

using namespace hstbeam;
using namespace hstbeam::testing;

namespace {

constexpr double kThetaH64 = 0.027673065730103301507;

ArrayConfig config_with_elements(std::uint32_t m) { return make_array_config(m, 0.5, 2.4e9); }

}  // namespace

TEST_CASE("wrap_phase maps into (-pi, pi]") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(kPi) == kPi);
  CHECK(wrap_phase(-kPi) == kPi);
  CHECK(rel_close(wrap_phase(kPi / 3.0), kPi / 3.0, 1e-15));

  for (double x = -25.0; x <= 25.0; x += 0.173) {
    const double w = wrap_phase(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    // Wrapping never moves the phasor.
    CHECK(abs_close(std::cos(w), std::cos(x), 1e-12));
    CHECK(abs_close(std::sin(w), std::sin(x), 1e-12));
  }
  CHECK_THROWS_AS(wrap_phase(std::nan("")), std::invalid_argument);
}

TEST_CASE("steering phase anchors") {
  const ArrayConfig cfg = config_with_elements(64);
  // Half-wavelength spacing: beta = -pi*cos(theta).
  CHECK(abs_close(steering_phase(cfg, kPi / 3.0), -kPi / 2.0, 1e-12));
  CHECK(abs_close(steering_phase(cfg, kPi / 2.0), 0.0, 1e-15));
  CHECK(abs_close(steering_phase(cfg, 2.0 * kPi / 3.0), kPi / 2.0, 1e-12));
}

TEST_CASE("phase mapper shape and broadside column") {
  const ArrayConfig cfg = config_with_elements(16);
  const BeamGrid grid = make_beam_grid(cfg, 33);
  const PhaseMapper mapper = build_phase_mapper(cfg, grid);

  CHECK(mapper.element_count() == 16);
  CHECK(mapper.beam_count() == 33);
  CHECK(mapper.beam_center_angles() == grid.center_angles);
  CHECK(mapper.column(0).size() == 16);

  // The middle beam of an odd grid is exactly broadside; its progressive
  // phase vanishes.
  for (std::uint32_t m = 0; m < 16; ++m) {
    CHECK(std::fabs(mapper.phase(m, 16)) <= 1e-15);
  }

  // Columns hold one constant progressive phase each.
  for (std::uint32_t i = 0; i < mapper.beam_count(); ++i) {
    const double beta = steering_phase(cfg, grid.center_angles[i]);
    for (std::uint32_t m = 0; m < 16; ++m) CHECK(mapper.phase(m, i) == beta);
  }

  CHECK_THROWS_AS(mapper.column(33), std::out_of_range);
  CHECK_THROWS_AS(mapper.phase(16, 0), std::out_of_range);
}

TEST_CASE("phase mapper validation") {
  CHECK_THROWS_AS(PhaseMapper(0, 4, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseMapper(2, 2, {0.0, 0.0, 0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseMapper(1, 2, {0.0, 4.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseMapper(1, 2, {0.0, -kPi}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PhaseMapper(1, 2, {0.0, 0.0}, {1.0}), std::invalid_argument);
  CHECK_NOTHROW(PhaseMapper(1, 2, {kPi, 0.5}, {1.0, 1.5}));
}

TEST_CASE("steering vector structure") {
  const ArrayConfig cfg = config_with_elements(2);
  const std::vector<double> zeros{0.0, 0.0};

  SUBCASE("first element is the phase reference") {
    const auto v = steering_vector(1.234, zeros, cfg);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == std::complex<double>(1.0, 0.0));
  }

  SUBCASE("half-wavelength spacing at theta = pi/3 advances by pi/2") {
    const auto v = steering_vector(kPi / 3.0, zeros, cfg);
    CHECK(abs_close(v[1].real(), 0.0, 1e-12));
    CHECK(abs_close(v[1].imag(), 1.0, 1e-12));
  }

  SUBCASE("unit modulus everywhere") {
    const ArrayConfig big = config_with_elements(64);
    const std::vector<double> column(64, 0.7);
    for (double theta = 0.3; theta < 2.9; theta += 0.217) {
      for (const auto &e : steering_vector(theta, column, big)) {
        CHECK(abs_close(std::abs(e), 1.0, 1e-12));
      }
    }
  }

  SUBCASE("column length must match the element count") {
    CHECK_THROWS_AS(steering_vector(1.0, std::vector<double>{0.0}, cfg), std::invalid_argument);
  }
}

TEST_CASE("array factor peaks at the steered angle") {
  const ArrayConfig cfg = config_with_elements(16);
  const BeamGrid grid = make_beam_grid(cfg, 16);
  const PhaseMapper mapper = build_phase_mapper(cfg, grid);

  for (std::uint32_t i = 0; i < grid.beam_count; ++i) {
    const std::complex<double> af =
        array_factor(mapper.column(i), grid.center_angles[i], cfg);
    CHECK(abs_close(af.real(), 16.0, 1e-9));
    CHECK(abs_close(af.imag(), 0.0, 1e-9));
  }

  // No sampled angle beats the steered center.
  const auto column = mapper.column(7);
  const double peak = std::abs(array_factor(column, grid.center_angles[7], cfg));
  for (int k = 0; k < 400; ++k) {
    const double theta = grid.sector_start + (k + 0.5) / 400.0 * grid.sector_width;
    CHECK(std::abs(array_factor(column, theta, cfg)) <= peak * (1.0 + 1e-12));
  }
}

TEST_CASE("array factor honors the amplitude allocation") {
  const ArrayConfig cfg = config_with_elements(4);
  const std::vector<double> zeros(4, 0.0);
  const std::vector<double> taper{1.0, 0.5, 0.5, 0.0};

  const std::complex<double> af = array_factor(zeros, kPi / 2.0, cfg, taper);
  CHECK(abs_close(af.real(), 2.0, 1e-12));
  CHECK(abs_close(af.imag(), 0.0, 1e-12));

  CHECK_THROWS_AS(array_factor(zeros, kPi / 2.0, cfg, std::vector<double>{1.0, -0.1, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(array_factor(zeros, kPi / 2.0, cfg, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("beam weight") {
  const ArrayConfig cfg = config_with_elements(64);
  const BeamGrid grid = make_beam_grid(cfg, 64);

  // Unit amplitudes: w = sqrt(D) = sqrt(64).
  CHECK(beam_weight(10, kPi / 2.0, cfg, grid) == 8.0);

  // Quadrupling the power allocation doubles the weight.
  const std::vector<double> uniform_alloc(64, 1.0 / 64.0);
  const std::vector<double> quadrupled(64, 4.0 / 64.0);
  CHECK(beam_weight(10, kPi / 2.0, cfg, grid, uniform_alloc) == 8.0);
  CHECK(beam_weight(10, kPi / 2.0, cfg, grid, quadrupled) == 16.0);

  CHECK_THROWS_AS(beam_weight(64, kPi / 2.0, cfg, grid), std::out_of_range);
  CHECK_THROWS_AS(beam_weight(0, 0.1, cfg, grid), out_of_coverage_error);
  CHECK_THROWS_AS(beam_weight(0, kPi / 2.0, cfg, grid, std::vector<double>{1.0, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("measured pattern of the broadside beam matches the closed forms") {
  const ArrayConfig cfg = config_with_elements(64);
  const std::vector<double> broadside(64, 0.0);
  const BeamPattern pattern = measure_pattern(broadside, cfg, 1e-3);

  CHECK(abs_close(pattern.peak_angle, kPi / 2.0, 1e-3));
  CHECK(std::fabs(pattern.measured_hpbw - kThetaH64) / kThetaH64 < 0.05);
  CHECK(std::fabs(pattern.measured_directivity - 64.0) / 64.0 < 0.05);
  CHECK(pattern.angles.size() == pattern.normalized_gain.size());
  for (double g : pattern.normalized_gain) {
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("measured pattern of a steered column peaks at its center") {
  const ArrayConfig cfg = config_with_elements(16);
  const BeamGrid grid = make_beam_grid(cfg, 16);
  const PhaseMapper mapper = build_phase_mapper(cfg, grid);
  const double res = 4e-3;

  for (std::uint32_t i : {0u, 7u, 15u}) {
    const BeamPattern pattern = measure_pattern(mapper.column(i), cfg, res);
    CHECK(std::fabs(pattern.peak_angle - grid.center_angles[i]) <= res);
  }
}

TEST_CASE("single-element pattern is flat") {
  const ArrayConfig cfg = config_with_elements(1);
  const BeamPattern pattern = measure_pattern(std::vector<double>{0.0}, cfg, 0.01);
  CHECK(pattern.measured_hpbw == kPi);
  CHECK(abs_close(pattern.measured_directivity, 1.0, 1e-3));
}

TEST_CASE("pattern resolution guard") {
  const ArrayConfig cfg = config_with_elements(64);
  const std::vector<double> broadside(64, 0.0);
  const double lobe = half_power_beamwidth(cfg, 64);

  CHECK_THROWS_AS(measure_pattern(broadside, cfg, lobe / 10.0), resolution_error);
  CHECK_THROWS_AS(measure_pattern(broadside, cfg, 1.0), resolution_error);
  CHECK_THROWS_AS(measure_pattern(broadside, cfg, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(measure_pattern(broadside, cfg, -1e-3), std::invalid_argument);
  CHECK_NOTHROW(measure_pattern(broadside, cfg, lobe / 20.0));
}

TEST_CASE("phase mapper CSV round-trip is exact") {
  const ArrayConfig cfg = config_with_elements(8);
  const PhaseMapper mapper = build_phase_mapper(cfg, make_beam_grid(cfg, 8));

  std::ostringstream out;
  export_phase_mapper_csv(mapper, out);

  std::istringstream in(out.str());
  const PhaseMapper loaded = import_phase_mapper_csv(in);
  REQUIRE(loaded.element_count() == 8);
  REQUIRE(loaded.beam_count() == 8);
  CHECK(loaded.beam_center_angles().empty());
  for (std::uint32_t m = 0; m < 8; ++m) {
    for (std::uint32_t i = 0; i < 8; ++i) {
      CHECK(loaded.phase(m, i) == mapper.phase(m, i));
    }
  }
}

TEST_CASE("phase mapper CSV import skips comments and one header row") {
  std::istringstream in("# exported mapper\nbeam_0,beam_1\n\n0.25,-0.5\n0.75,1.0\n");
  const PhaseMapper mapper = import_phase_mapper_csv(in);
  CHECK(mapper.element_count() == 2);
  CHECK(mapper.beam_count() == 2);
  CHECK(mapper.phase(0, 0) == 0.25);
  CHECK(mapper.phase(0, 1) == -0.5);
  CHECK(mapper.phase(1, 0) == 0.75);
  CHECK(mapper.phase(1, 1) == 1.0);
}

TEST_CASE("phase mapper CSV import rejects malformed input") {
  std::istringstream ragged("0.25,0.5\n0.75\n");
  CHECK_THROWS_AS(import_phase_mapper_csv(ragged), std::invalid_argument);

  std::istringstream second_header("0.25,0.5\nbeam_0,beam_1\n");
  CHECK_THROWS_AS(import_phase_mapper_csv(second_header), std::invalid_argument);

  std::istringstream empty("");
  CHECK_THROWS_AS(import_phase_mapper_csv(empty), std::invalid_argument);

  std::istringstream comments_only("# nothing\n# here\n");
  CHECK_THROWS_AS(import_phase_mapper_csv(comments_only), std::invalid_argument);
}
