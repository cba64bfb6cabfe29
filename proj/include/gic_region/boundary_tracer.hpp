#pragma once

// Lower part (weights 0 < mu <= 1) of the boundary of one constituent region,
// built from the closed-form stationary weights of the two users:
//
//   corner A          rho = 0, theta = 1
//   StationaryUser2   P1hat = P1, P2hat grows while mu = mu2(P1, P2hat)
//   Coupled           mu1 = mu2 = mu, both private powers shrink to (T1, T2)
//   SumRateFront      fixed split (rho_S, theta_S), public pair slides along
//                     the binding MAC sum-rate face
//
// Points are assembled as public_rate_pair + private rates at each split.
// The upper part is the lower part of the user-exchanged channel.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gic_region/gic_core.hpp"
#include "gic_region/mac_intersection.hpp"

namespace gic {

enum class Regime { CornerA, StationaryUser2, Coupled, SumRateFront };

struct BoundaryPoint {
  double mu = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  double p1hat = 0.0;
  double p2hat = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  Regime regime = Regime::CornerA;
  MacCaseId mac_case = MacCaseId::Case1;
};

/// Overall shape of a traced part, in the order the tracer tests for them.
enum class TraceRegime {
  CornerOnly,          // P1 < T1: user 1 stays fully private, the lower part is A
  SumRateFrontOnly,    // P1 = T1: the lower part is the sum-rate front itself
  StationaryOnly,      // P2 <= T2: the stationary segment runs to theta = 0
  NoCoupledSegment,    // mu1 = mu2 has no root in (T2, P2]
  ClippedAtSumRate,    // r1 + r2 reached the sum-rate front before mu = 1
  FullStructure,       // A -> D3 -> S (-> S-breve)
};

struct PrivatePowers {
  double p1hat = 0.0;
  double p2hat = 0.0;
};

/// Per-unit-power rate changes (natural-log scale, common factor 1/(2 ln 2)
/// dropped) when a thin layer of user 1's power is added to its private part
/// versus to a fresh public layer decoded at Y2.
struct DeltaStepGains {
  double private_r1_gain = 0.0;
  double private_r2_loss = 0.0;  // negative: user 2's private rate drops
  double public_r1_gain = 0.0;
};

struct KeyPoints {
  BoundaryPoint point_a;
  double mu_at_a = 0.0;
  BoundaryPoint point_d1;  // P2hat crosses T2
  BoundaryPoint point_d2;  // mu1 reaches 1
  BoundaryPoint point_d3;  // mu1 = mu2 with P1hat = P1
  BoundaryPoint point_s;
  double d2_p2hat = 0.0;
  double d3_p2hat = 0.0;
  PowerSplit s_split{0.0, 0.0};
};

struct BoundaryTrace {
  std::vector<BoundaryPoint> points;
  TraceRegime regime = TraceRegime::FullStructure;
  /// P1(1-b) < P2(1-a): the lower part meets the sum-rate front tangentially.
  bool tangent_condition = false;
  std::string report;
};

/// Weight at which user 1's private/public split is stationary. +infinity at
/// p2hat = 0.
double mu1_closed(const ChannelParams& ch, double p1hat, double p2hat);

/// Mirror of mu1_closed under a <-> b, P1hat <-> P2hat. +infinity at p1hat = 0.
double mu2_closed(const ChannelParams& ch, double p1hat, double p2hat);

DeltaStepGains delta_step_gains(const ChannelParams& ch, double p1hat, double p2hat);

/// P2hat in [0, P2] with mu2_closed(P1, P2hat) = mu (P1hat pinned at P1).
/// Throws ValidationError naming the reachable interval when mu is outside it.
double solve_stationary_p2hat(const ChannelParams& ch, double mu);

/// T2-breve: the root of mu1(P1, x) = mu2(P1, x) in (T2, P2]. Throws
/// RegimeError when P1 <= T1, P2 <= T2 or no root exists.
double point_d3(const ChannelParams& ch);

/// Private powers with mu1 = mu2 = mu on the coupled segment,
/// mu in [mu(D3), 1]. Nested bisection: outer on P1hat, inner on P2hat.
PrivatePowers solve_coupled(const ChannelParams& ch, double mu);

BoundaryPoint point_a(const ChannelParams& ch);

/// Boundary point at the given split, rates = public pair + private rates.
BoundaryPoint assemble_point(const ChannelParams& ch, const PowerSplit& split, double mu,
                             Regime regime);

/// Point of the lower part whose weight is `mu` (0 < mu <= 1), following the
/// same regime logic as trace_lower_boundary.
BoundaryPoint lower_point_at(const ChannelParams& ch, double mu);

/// Throws RegimeError unless P1 > T1, P2 > T2 and D3 exists.
KeyPoints key_points(const ChannelParams& ch);

BoundaryTrace trace_lower_boundary(const ChannelParams& ch, std::size_t num_points);

/// Lower trace of swap_users(ch) mapped back: r1 <-> r2, rho <-> theta and
/// mu -> 1/mu. Ordered from the corner maximizing R2 clockwise.
BoundaryTrace trace_upper_boundary(const ChannelParams& ch, std::size_t num_points);

std::string_view to_string(Regime regime);
std::string_view to_string(TraceRegime regime);

}  // namespace gic
