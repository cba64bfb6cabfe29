#include "gic_region/mac_intersection.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gic_region/errors.hpp"

namespace gic {

namespace {

constexpr double kTieTol = 1e-12;

bool near(double x, double y) { return std::abs(x - y) <= kTieTol; }

}  // namespace

MacCorners corner_rates(const ChannelParams& ch, const PowerSplit& split) {
  const double s1 = noise_at_y1(ch, split);
  const double s2 = noise_at_y2(ch, split);
  // Received public powers at each receiver.
  const double u1_at_y1 = split.p1_public(ch);
  const double u2_at_y1 = ch.a() * split.p2_public(ch);
  const double u1_at_y2 = ch.b() * split.p1_public(ch);
  const double u2_at_y2 = split.p2_public(ch);

  MacCorners c;
  c.r1_plus_1 = awgn_capacity(u1_at_y1, s1);
  c.r1_minus_1 = awgn_capacity(u1_at_y1, u2_at_y1 + s1);
  c.r1_plus_2 = awgn_capacity(u1_at_y2, s2);
  c.r1_minus_2 = awgn_capacity(u1_at_y2, u2_at_y2 + s2);
  c.r2_plus_2 = awgn_capacity(u2_at_y2, s2);
  c.r2_minus_2 = awgn_capacity(u2_at_y2, u1_at_y2 + s2);
  c.r2_plus_1 = awgn_capacity(u2_at_y1, s1);
  c.r2_minus_1 = awgn_capacity(u2_at_y1, u1_at_y1 + s1);
  c.sum_y1 = awgn_capacity(u1_at_y1 + u2_at_y1, s1);
  c.sum_y2 = awgn_capacity(u1_at_y2 + u2_at_y2, s2);
  return c;
}

MacCase classify(const MacCorners& c) {
  const bool user1_ge = c.r1_minus_1 >= c.r1_plus_2;  // r1_plus_2 does not exceed r1_minus_1
  const bool user1_le = c.r1_minus_1 <= c.r1_plus_2;
  const bool user2_ge = c.r2_minus_2 >= c.r2_plus_1;
  const bool user2_le = c.r2_minus_2 <= c.r2_plus_1;

  MacCaseId id = MacCaseId::Case4;
  if (user1_ge && user2_ge) {
    id = MacCaseId::Case1;
  } else if (user1_le && user2_ge) {
    id = MacCaseId::Case2;
  } else if (user1_ge && user2_le) {
    id = MacCaseId::Case3;
  }
  return MacCase{id, id == MacCaseId::Case2 || id == MacCaseId::Case4};
}

double threshold_theta(const ChannelParams& ch) {
  return (1.0 - ch.b()) / ch.p2() - ch.a() * ch.b() + 1.0;
}

double threshold_rho(const ChannelParams& ch) {
  return (1.0 - ch.a()) / ch.p1() - ch.a() * ch.b() + 1.0;
}

PublicRatePair public_rate_pair(const MacCorners& c) {
  PublicRatePair out;
  out.r_u1 = c.r1_plus_2;

  const std::array<std::pair<double, PublicBound>, 3> bounds{{
      {c.r2_plus_1, PublicBound::R2PlusAtY1},
      {c.sum_y1 - c.r1_plus_2, PublicBound::JointSumAtY1},
      {c.r2_minus_2, PublicBound::R2MinusAtY2},
  }};
  double r_u2 = bounds[0].first;
  for (const auto& [value, tag] : bounds) r_u2 = std::min(r_u2, value);
  out.r_u2 = std::max(r_u2, 0.0);
  for (const auto& [value, tag] : bounds) {
    if (near(value, r_u2)) out.decoding.binding.push_back(tag);
  }

  // A receiver can decode successively iff the pair sits on one of its MAC
  // corners' dominated boxes; otherwise it must decode jointly.
  if (out.r_u1 <= c.r1_minus_1 + kTieTol && out.r_u2 <= c.r2_plus_1 + kTieTol) {
    out.decoding.at_y1 = DecodingOrder::U1ThenU2;
  } else if (out.r_u2 <= c.r2_minus_1 + kTieTol && out.r_u1 <= c.r1_plus_1 + kTieTol) {
    out.decoding.at_y1 = DecodingOrder::U2ThenU1;
  } else {
    out.decoding.at_y1 = DecodingOrder::Joint;
  }
  if (out.r_u2 <= c.r2_minus_2 + kTieTol && out.r_u1 <= c.r1_plus_2 + kTieTol) {
    out.decoding.at_y2 = DecodingOrder::U2ThenU1;
  } else if (out.r_u1 <= c.r1_minus_2 + kTieTol && out.r_u2 <= c.r2_plus_2 + kTieTol) {
    out.decoding.at_y2 = DecodingOrder::U1ThenU2;
  } else {
    out.decoding.at_y2 = DecodingOrder::Joint;
  }
  return out;
}

PublicRatePair public_rate_pair(const ChannelParams& ch, const PowerSplit& split) {
  return public_rate_pair(corner_rates(ch, split));
}

std::vector<Vertex> intersection_polygon(const MacCorners& c) {
  const std::array<HalfPlane, 8> constraints{{
      {-1.0, 0.0, 0.0},
      {0.0, -1.0, 0.0},
      {1.0, 0.0, c.r1_plus_1},
      {0.0, 1.0, c.r2_plus_1},
      {1.0, 1.0, c.sum_y1},
      {1.0, 0.0, c.r1_plus_2},
      {0.0, 1.0, c.r2_plus_2},
      {1.0, 1.0, c.sum_y2},
  }};
  std::vector<Vertex> vertices = enumerate_vertices(constraints, kTieTol);
  if (vertices.empty()) vertices.push_back({0.0, 0.0});
  sort_counterclockwise(vertices);
  return vertices;
}

SumRateFront sum_rate_front(const ChannelParams& ch) {
  const double a = ch.a();
  const double b = ch.b();
  const double t1 = ch.t1();
  const double t2 = ch.t2();
  constexpr double kRel = 1e-12;
  if (ch.p1() < t1 * (1.0 - kRel) || ch.p2() < t2 * (1.0 - kRel)) {
    throw RegimeError("sum-rate front requires P1 >= T1 and P2 >= T2 (T1=" + std::to_string(t1) +
                      ", T2=" + std::to_string(t2) +
                      "); use the degenerate-regime trace instead");
  }
  const double excess1 = std::max(ch.p1() - t1, 0.0);
  const double excess2 = std::max(ch.p2() - t2, 0.0);
  const double inv_ab = 1.0 / (a * b);
  const double via_y1 = 0.5 * std::log2(inv_ab + excess1 + a * excess2);
  const double via_y2 = 0.5 * std::log2(inv_ab + excess2 + b * excess1);

  SumRateFront out;
  out.r_sum = std::min(via_y1, via_y2);
  const double lhs = ch.p1() * (1.0 - b);
  const double rhs = ch.p2() * (1.0 - a);
  if (std::abs(lhs - rhs) <= kRel * std::max(lhs, rhs)) {
    out.binding_receiver = Receiver::Both;
  } else {
    out.binding_receiver = lhs < rhs ? Receiver::Y1 : Receiver::Y2;
  }
  out.rho_s = std::clamp(1.0 - t1 / ch.p1(), 0.0, 1.0);
  out.theta_s = std::clamp(1.0 - t2 / ch.p2(), 0.0, 1.0);
  return out;
}

std::string_view to_string(MacCaseId id) {
  switch (id) {
    case MacCaseId::Case1: return "Case1";
    case MacCaseId::Case2: return "Case2";
    case MacCaseId::Case3: return "Case3";
    case MacCaseId::Case4: return "Case4";
  }
  return "?";
}

std::string_view to_string(DecodingOrder order) {
  switch (order) {
    case DecodingOrder::U1ThenU2: return "U1>U2";
    case DecodingOrder::U2ThenU1: return "U2>U1";
    case DecodingOrder::Joint: return "joint";
  }
  return "?";
}

std::string_view to_string(PublicBound bound) {
  switch (bound) {
    case PublicBound::R2PlusAtY1: return "r2p1";
    case PublicBound::JointSumAtY1: return "sum_y1-r1p2";
    case PublicBound::R2MinusAtY2: return "r2m2";
  }
  return "?";
}

std::string_view to_string(Receiver receiver) {
  switch (receiver) {
    case Receiver::Y1: return "Y1";
    case Receiver::Y2: return "Y2";
    case Receiver::Both: return "Both";
  }
  return "?";
}

}  // namespace gic
