#include "gic_region/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "gic_region/errors.hpp"
#include "gic_region/hk_region.hpp"
#include "gic_region/mac_intersection.hpp"

namespace gic {

namespace {

struct Rates {
  double r1 = 0.0;
  double r2 = 0.0;
};

// Public pair (mu <= 1 optimum) plus private rates for a channel whose budgets
// are exactly the powers currently in play.
Rates rates_of(double a, double b, double p1, double p2, double public1, double public2) {
  double r1 = 0.0;
  double r2 = 0.0;
  const double p1hat = p1 - public1;
  const double p2hat = p2 - public2;
  if (p1 > 0.0 && p2 > 0.0) {
    const ChannelParams ch(a, b, p1, p2);
    const PowerSplit split(public1 / p1, public2 / p2);
    const PublicRatePair pub = public_rate_pair(ch, split);
    r1 += pub.r_u1;
    r2 += pub.r_u2;
  }
  r1 += awgn_capacity(p1hat, a * p2hat + 1.0);
  r2 += awgn_capacity(p2hat, b * p1hat + 1.0);
  return {r1, r2};
}

}  // namespace

std::vector<OracleReport> grid_oracle(const ChannelParams& ch, const std::vector<double>& mus,
                                      std::size_t resolution,
                                      const std::vector<double>& reference_values) {
  if (mus.size() != reference_values.size()) {
    throw ValidationError("grid_oracle needs one reference value per weight");
  }
  const std::vector<SplitSearchResult> found = hk_weighted_sum_over_splits(ch, mus, resolution);
  std::vector<OracleReport> out;
  for (std::size_t m = 0; m < mus.size(); ++m) {
    OracleReport r;
    r.best_value = found[m].best_value;
    r.best_split = found[m].best_split;
    r.gap_vs_reference = r.best_value - reference_values[m];
    r.samples = resolution * resolution;
    r.resolution = resolution;
    out.push_back(r);
  }
  return out;
}

OracleReport grid_oracle(const ChannelParams& ch, double mu, std::size_t resolution, double reference_value) {
  return grid_oracle(ch, std::vector<double>{mu}, resolution, std::vector<double>{reference_value}).front();
}

double finite_difference_mu1(const ChannelParams& ch, double p1hat, double p2hat, double delta) {
  if (!(delta > 0.0)) throw ValidationError("delta must be positive");
  if (!(p2hat > 0.0)) throw ValidationError("p2hat must be positive");
  if (!(p1hat >= 0.0)) throw ValidationError("p1hat must be non-negative");
  const double a = ch.a();
  const double b = ch.b();
  // Natural-log differences; the common 1/(2 ln 2) cancels in the ratio.
  const double private_r1 = std::log1p(delta / (p1hat + a * p2hat + 1.0));
  const double public_r1 = std::log1p(b * delta / (b * p1hat + p2hat + 1.0));
  const double private_r2 = public_r1 - std::log1p(b * delta / (b * p1hat + 1.0));
  return (public_r1 - private_r1) / private_r2;
}

OrderingScanReport ordering_scan(const ChannelParams& ch, std::size_t num_samples, std::uint64_t seed) {
  if (num_samples == 0) throw ValidationError("ordering_scan needs at least one sample");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  OrderingScanReport report;
  report.samples = num_samples;
  report.seed = seed;
  for (std::size_t s = 0; s < num_samples; ++s) {
    const double rho = unit(rng);
    const double theta = unit(rng);
    const MacCorners c = corner_rates(ch, PowerSplit(rho, theta));
    const std::array<std::pair<double, double>, 8> pairs{{
        {c.r1_plus_1, c.r1_minus_1},
        {c.r2_plus_2, c.r2_minus_2},
        {c.r1_plus_2, c.r1_minus_2},
        {c.r2_plus_1, c.r2_minus_1},
        {c.r1_plus_1, c.r1_plus_2},
        {c.r1_minus_1, c.r1_minus_2},
        {c.r2_plus_2, c.r2_plus_1},
        {c.r2_minus_2, c.r2_minus_1},
    }};
    for (const auto& [hi, lo] : pairs) {
      if (hi < lo) ++report.violations;
    }
  }
  return report;
}

double composite_step_check(const ChannelParams& ch, double p1hat, double p2hat, double delta) {
  if (!(delta >= 0.0)) throw ValidationError("delta must be non-negative");
  if (!(p1hat > 0.0) || !(p2hat > 0.0)) throw ValidationError("private powers must be positive");
  if (delta == 0.0) return 0.0;
  const double a = ch.a();
  const double b = ch.b();
  const double q1 = p1hat + delta;
  const double q2 = p2hat + delta;

  // Start: both delta-layers still private.
  const Rates start = rates_of(a, b, q1, q2, 0.0, 0.0);
  // Composite: both delta-layers public at once.
  const Rates joint = rates_of(a, b, q1, q2, delta, delta);
  // Simple step 1 moves user 1's layer; it is then decoded and removed at
  // both receivers, leaving a channel with budgets (p1hat, q2) for step 2.
  const Rates step1 = rates_of(a, b, q1, q2, delta, 0.0);
  const Rates before2 = rates_of(a, b, p1hat, q2, 0.0, 0.0);
  const Rates after2 = rates_of(a, b, p1hat, q2, 0.0, delta);

  const double step1_r1 = step1.r1 - start.r1;
  const double step1_r2 = step1.r2 - start.r2;
  // Step 1's public layer keeps its rate; before2 is the private part of the
  // state after step 1.
  const double step2_r1 = after2.r1 - before2.r1;
  const double step2_r2 = after2.r2 - before2.r2;

  const double simple_r1 = step1_r1 + step2_r1;
  const double simple_r2 = step1_r2 + step2_r2;
  const double joint_r1 = joint.r1 - start.r1;
  const double joint_r2 = joint.r2 - start.r2;
  return std::max(std::abs(joint_r1 - simple_r1), std::abs(joint_r2 - simple_r2));
}

}  // namespace gic
