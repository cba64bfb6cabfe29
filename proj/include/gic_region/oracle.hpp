#pragma once

// Brute-force and finite-difference checks that do not rely on the
// closed-form optimality conditions.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gic_region/gic_core.hpp"

namespace gic {

struct OracleReport {
  double best_value = 0.0;
  PowerSplit best_split{0.0, 0.0};
  /// best_value - reference; positive means the grid beat the reference.
  double gap_vs_reference = 0.0;
  std::size_t samples = 0;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;  // the grid is exhaustive, so always 0
};

/// Best R1 + mu R2 of the reduced HK LP over a resolution x resolution grid of
/// (rho, theta).
OracleReport grid_oracle(const ChannelParams& ch, double mu, std::size_t resolution,
                         double reference_value);

/// One sweep, several weights; mus and references are paired by index.
std::vector<OracleReport> grid_oracle(const ChannelParams& ch, const std::vector<double>& mus,
                                      std::size_t resolution,
                                      const std::vector<double>& reference_values);

/// Weight at which a delta-layer of user 1 is worth the same as private or as
/// public power, from exact rate differences:
///   (public dR1 - private dR1) / private dR2.
double finite_difference_mu1(const ChannelParams& ch, double p1hat, double p2hat, double delta);

struct OrderingScanReport {
  std::size_t violations = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Samples uniform splits and counts violations of the corner orderings
///   r1_plus_1 >= r1_minus_1, r2_plus_2 >= r2_minus_2,
///   r1_plus_2 >= r1_minus_2, r2_plus_1 >= r2_minus_1,
///   r1_plus_1 >= r1_plus_2,  r1_minus_1 >= r1_minus_2,
///   r2_plus_2 >= r2_plus_1,  r2_minus_2 >= r2_minus_1.
/// Ties are not violations.
OrderingScanReport ordering_scan(const ChannelParams& ch, std::size_t num_samples, std::uint64_t seed);

/// Moves delta of each user's private power into fresh public layers, once
/// jointly (rates at the MAC intersection point) and once as two successive
/// single-user steps. Returns the largest difference in (R1, R2) between the
/// two; it is second order in delta.
double composite_step_check(const ChannelParams& ch, double p1hat, double p2hat, double delta);

}  // namespace gic
