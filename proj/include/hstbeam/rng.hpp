// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hstbeam {

/// Seeded stream of standard normal deviates.
///
/// Every consumer of randomness in the library draws through this type so
/// that results are bit-reproducible for a fixed (seed, stream) pair. The
/// stream index lets samples be partitioned deterministically across
/// workers: stream k always produces the same sequence no matter which
/// thread runs it. Mapping from raw bits to deviates is done here (53-bit
/// uniform plus Box-Muller) instead of std::normal_distribution, whose
/// draw sequence is implementation-defined.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform draw in (0, 1].
  double next_uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal draw.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hstbeam
