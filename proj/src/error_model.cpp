// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "hstbeam/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hstbeam/parallel.hpp"
#include "hstbeam/rng.hpp"

namespace hstbeam {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr std::uint64_t kMcBlock = std::uint64_t{1} << 16;

void require_window(const BeamWindow &window) {
  if (!std::isfinite(window.left_edge_distance) || window.left_edge_distance < 0.0 ||
      !std::isfinite(window.right_edge_distance) || window.right_edge_distance < 0.0)
    throw std::invalid_argument("beam window edge distances must be nonnegative and finite");
}

// Q(edge/sigma) with its sigma -> 0 limit: 0 off the edge, 1/2 on it.
double tail(double edge, double sigma) {
  if (sigma == 0.0) return edge > 0.0 ? 0.0 : 0.5;
  return q_function(edge / sigma);
}

}  // namespace

void validate(const PositioningErrorModel &err) {
  if (!std::isfinite(err.sigma) || err.sigma < 0.0)
    throw std::invalid_argument("sigma must be nonnegative and finite");
}

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double effective_probability(const BeamWindow &window, const PositioningErrorModel &err) {
  validate(err);
  require_window(window);
  return 1.0 - 0.5 * (tail(window.left_edge_distance, err.sigma) +
                      tail(window.right_edge_distance, err.sigma));
}

double two_sided_interval_probability(const BeamWindow &window,
                                      const PositioningErrorModel &err) {
  validate(err);
  require_window(window);
  return 1.0 - tail(window.left_edge_distance, err.sigma) -
         tail(window.right_edge_distance, err.sigma);
}

McEstimate mc_effective_probability(const BeamWindow &window, const PositioningErrorModel &err,
                                    std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  validate(err);
  require_window(window);
  if (samples == 0) throw std::invalid_argument("sample count must be at least 1");

  const double gamma_l = window.left_edge_distance;
  const double gamma_r = window.right_edge_distance;
  const double sigma = err.sigma;

  // Fixed-size blocks, each on its own stream, make the tally independent
  // of how blocks are assigned to threads.
  const std::uint64_t block_count = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(block_count), 0);
  detail::parallel_for_index(
      static_cast<std::size_t>(block_count),
      [&](std::size_t b) {
        GaussianStream stream(seed, static_cast<std::uint64_t>(b));
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kMcBlock;
        const std::uint64_t len = std::min(kMcBlock, samples - begin);
        std::uint64_t inside = 0;
        for (std::uint64_t k = 0; k < len; ++k) {
          const double dx = sigma * stream.next_normal();
          if (dx > -gamma_l && dx < gamma_r) ++inside;
        }
        hits[b] = inside;
      },
      workers);

  const std::uint64_t total =
      std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  McEstimate result;
  result.estimate = static_cast<double>(total) / static_cast<double>(samples);
  result.standard_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(samples));
  result.samples = samples;
  result.seed = seed;
  return result;
}

}  // namespace hstbeam
