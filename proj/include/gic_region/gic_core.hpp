#pragma once

// Channel model and elementary Gaussian rate formulas for the two-user weak
// Gaussian interference channel
//
//   Y1 = X1 + sqrt(a) X2 + Z1,   Y2 = X2 + sqrt(b) X1 + Z2,   Z_i ~ N(0, 1)
//
// with power budgets P1, P2 and power cross-gains 0 < a, b < 1. All rates
// are in bits per channel use.

#include <cstddef>
#include <vector>

namespace gic {

/// One constituent channel: cross-gains and power budgets.
class ChannelParams {
 public:
  /// Throws ValidationError unless 0 < a, b < 1 and p1, p2 > 0.
  ChannelParams(double a, double b, double p1, double p2);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }

  /// Private-power threshold (1-a)/(ab) of user 1.
  double t1() const noexcept { return (1.0 - a_) / (a_ * b_); }
  /// Private-power threshold (1-b)/(ab) of user 2.
  double t2() const noexcept { return (1.0 - b_) / (a_ * b_); }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  double a_;
  double b_;
  double p1_;
  double p2_;
};

/// Public power fractions: rho of P1 and theta of P2 go to the public
/// (commonly decoded) layers, the rest to the private layers.
class PowerSplit {
 public:
  /// Throws ValidationError unless both fractions lie in [0, 1].
  PowerSplit(double rho, double theta);

  double rho() const noexcept { return rho_; }
  double theta() const noexcept { return theta_; }

  double p1hat(const ChannelParams& ch) const noexcept { return (1.0 - rho_) * ch.p1(); }
  double p2hat(const ChannelParams& ch) const noexcept { return (1.0 - theta_) * ch.p2(); }
  double p1_public(const ChannelParams& ch) const noexcept { return rho_ * ch.p1(); }
  double p2_public(const ChannelParams& ch) const noexcept { return theta_ * ch.p2(); }

  /// Split that leaves the given private powers; fractions are clamped into
  /// [0, 1] when they miss by rounding only (1e-12 relative).
  static PowerSplit from_private(const ChannelParams& ch, double p1hat, double p2hat);

  friend bool operator==(const PowerSplit&, const PowerSplit&) = default;

 private:
  double rho_;
  double theta_;
};

struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// 0.5*log2(1 + signal/noise). Throws ValidationError on noise <= 0 or
/// negative signal.
double awgn_capacity(double signal_power, double noise_power);

/// Interference-plus-noise power seen by the public layers at receiver 1:
/// (1-rho)P1 + a(1-theta)P2 + 1.
double noise_at_y1(const ChannelParams& ch, const PowerSplit& split);

/// (1-rho) b P1 + (1-theta)P2 + 1.
double noise_at_y2(const ChannelParams& ch, const PowerSplit& split);

/// Rate of user 1's private layer, decoded last at Y1 with user 2's private
/// layer as noise: 0.5 log2(1 + p1hat / (a p2hat + 1)).
double private_rate_user1(const ChannelParams& ch, double p1hat, double p2hat);

/// 0.5 log2(1 + p2hat / (b p1hat + 1)).
double private_rate_user2(const ChannelParams& ch, double p1hat, double p2hat);

/// Rates of `num_layers` equal-power layers superimposed on one AWGN link and
/// decoded successively, first-decoded layer first. Layer l (1-based) sees the
/// (L-l) layers below it as noise. Throws ValidationError on num_layers == 0.
std::vector<double> scsd_layer_rates(double total_power, double noise_power,
                                     std::size_t num_layers);

/// Exchange the roles of the two users: a <-> b, P1 <-> P2.
ChannelParams swap_users(const ChannelParams& ch);

}  // namespace gic
