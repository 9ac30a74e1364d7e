// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cstdint>

#include "hstbeam/rail_geometry.hpp"

namespace hstbeam {

/// Zero-mean Gaussian along-rail positioning error, Dx ~ N(0, sigma^2).
/// sigma = 0 means perfect positioning.
struct PositioningErrorModel {
  double sigma = 0.0;  // [m]
};

void validate(const PositioningErrorModel &err);

/// Gaussian tail probability Q(x) = P(Z > x) for Z ~ N(0, 1), evaluated
/// through the complementary error function at full double precision.
double q_function(double x);

/// Effective beam-forming probability with halved tails:
///   P = 1 - (Q(gamma_l/sigma) + Q(gamma_r/sigma)) / 2.
/// Lies in [1/2, 1] for nonnegative edge distances. At sigma = 0 each tail
/// term takes its limit (0 for a positive edge, 1/2 for a zero edge).
double effective_probability(const BeamWindow &window, const PositioningErrorModel &err);

/// Probability that the error actually stays inside the window,
///   P(-gamma_l < Dx < gamma_r) = 1 - Q(gamma_l/sigma) - Q(gamma_r/sigma).
/// This is the event probability the Monte Carlo estimator converges to;
/// it differs from effective_probability whenever both tails are nonzero.
double two_sided_interval_probability(const BeamWindow &window, const PositioningErrorModel &err);

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Estimate P(-gamma_l < Dx < gamma_r) by drawing `samples` errors from the
/// seeded generator. Samples are split into fixed-size blocks, each on its
/// own deterministic stream, so the result is bit-identical for any worker
/// count. `workers` = 0 uses hardware concurrency.
McEstimate mc_effective_probability(const BeamWindow &window, const PositioningErrorModel &err,
                                    std::uint64_t samples, std::uint64_t seed,
                                    unsigned workers = 0);

}  // namespace hstbeam
