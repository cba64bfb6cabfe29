#include "gic_region/gic_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gic_region/errors.hpp"

namespace gic {

namespace {

constexpr double kInvTwoLn2 = 0.5 / std::numbers::ln2;

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

void check_private_power(double p, double budget, const char* name) {
  if (!(p >= 0.0) || p > budget * (1.0 + 1e-12)) {
    throw ValidationError(std::string(name) + " must lie in [0, " + std::to_string(budget) +
                          "], got " + std::to_string(p));
  }
}

// Clamp a fraction that left [0,1] only through rounding.
double snap_fraction(double f, const char* name) {
  constexpr double kSlack = 1e-12;
  if (f < 0.0 && f > -kSlack) return 0.0;
  if (f > 1.0 && f < 1.0 + kSlack) return 1.0;
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(f));
  }
  return f;
}

}  // namespace

ChannelParams::ChannelParams(double a, double b, double p1, double p2)
    : a_(a), b_(b), p1_(p1), p2_(p2) {
  if (!in_open_unit(a) || !in_open_unit(b)) {
    throw ValidationError("cross gains must satisfy 0 < a, b < 1 (weak interference), got a=" +
                          std::to_string(a) + " b=" + std::to_string(b));
  }
  if (!(p1 > 0.0) || !(p2 > 0.0) || !std::isfinite(p1) || !std::isfinite(p2)) {
    throw ValidationError("power budgets must be positive and finite, got p1=" +
                          std::to_string(p1) + " p2=" + std::to_string(p2));
  }
}

PowerSplit::PowerSplit(double rho, double theta) : rho_(rho), theta_(theta) {
  if (!(rho >= 0.0 && rho <= 1.0) || !(theta >= 0.0 && theta <= 1.0)) {
    throw ValidationError("power split fractions must lie in [0, 1], got rho=" +
                          std::to_string(rho) + " theta=" + std::to_string(theta));
  }
}

PowerSplit PowerSplit::from_private(const ChannelParams& ch, double p1hat, double p2hat) {
  return PowerSplit(snap_fraction(1.0 - p1hat / ch.p1(), "rho"),
                    snap_fraction(1.0 - p2hat / ch.p2(), "theta"));
}

double awgn_capacity(double signal_power, double noise_power) {
  if (!(noise_power > 0.0)) {
    throw ValidationError("noise power must be positive, got " + std::to_string(noise_power));
  }
  if (!(signal_power >= 0.0)) {
    throw ValidationError("signal power must be non-negative, got " +
                          std::to_string(signal_power));
  }
  return kInvTwoLn2 * std::log1p(signal_power / noise_power);
}

double noise_at_y1(const ChannelParams& ch, const PowerSplit& split) {
  return split.p1hat(ch) + ch.a() * split.p2hat(ch) + 1.0;
}

double noise_at_y2(const ChannelParams& ch, const PowerSplit& split) {
  return ch.b() * split.p1hat(ch) + split.p2hat(ch) + 1.0;
}

double private_rate_user1(const ChannelParams& ch, double p1hat, double p2hat) {
  check_private_power(p1hat, ch.p1(), "p1hat");
  check_private_power(p2hat, ch.p2(), "p2hat");
  return awgn_capacity(p1hat, ch.a() * p2hat + 1.0);
}

double private_rate_user2(const ChannelParams& ch, double p1hat, double p2hat) {
  check_private_power(p1hat, ch.p1(), "p1hat");
  check_private_power(p2hat, ch.p2(), "p2hat");
  return awgn_capacity(p2hat, ch.b() * p1hat + 1.0);
}

std::vector<double> scsd_layer_rates(double total_power, double noise_power,
                                     std::size_t num_layers) {
  if (num_layers == 0) throw ValidationError("scsd_layer_rates needs at least one layer");
  if (!(total_power >= 0.0)) throw ValidationError("total power must be non-negative");
  if (!(noise_power > 0.0)) throw ValidationError("noise power must be positive");

  const double layer_power = total_power / static_cast<double>(num_layers);
  std::vector<double> rates;
  rates.reserve(num_layers);
  for (std::size_t l = 1; l <= num_layers; ++l) {
    const double below = static_cast<double>(num_layers - l) * layer_power;
    rates.push_back(awgn_capacity(layer_power, below + noise_power));
  }
  return rates;
}

ChannelParams swap_users(const ChannelParams& ch) {
  return ChannelParams(ch.b(), ch.a(), ch.p2(), ch.p1());
}

}  // namespace gic
