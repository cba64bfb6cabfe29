#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gic_region/boundary_tracer.hpp"
#include "gic_region/errors.hpp"

using namespace gic;

namespace {

double half_log2(double x) { return 0.5 * std::log2(x); }

const ChannelParams kE2(0.2, 0.4, 30.0, 40.0);
const ChannelParams kSym(0.25, 0.25, 20.0, 20.0);

// Random channel with P1 > T1 and P2 > T2.
ChannelParams rich_channel(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = 0.05 + 0.9 * u(rng);
  const double b = 0.05 + 0.9 * u(rng);
  const ChannelParams probe(a, b, 1, 1);
  return ChannelParams(a, b, probe.t1() * (1.05 + 4.0 * u(rng)), probe.t2() * (1.05 + 4.0 * u(rng)));
}

}  // namespace

TEST_CASE("closed-form weights") {
  CHECK(mu1_closed(kE2, 10.0, 7.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mu1_closed(kE2, 30.0, 10.0) == doctest::Approx(13.0 * 9.8 / 132.0).epsilon(1e-14));
  CHECK(mu1_closed(kE2, 30.0, 10.0) == doctest::Approx(0.965152).epsilon(1e-6));
  CHECK(mu2_closed(kE2, 10.0, 7.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mu2_closed(kE2, 30.0, 0.0) == doctest::Approx(28.4 / 78.0).epsilon(1e-14));
  CHECK(mu1_closed(kE2, 5.0, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(mu2_closed(kE2, 0.0, 5.0) == std::numeric_limits<double>::infinity());

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const ChannelParams ch = rich_channel(rng);
    CHECK(mu1_closed(ch, ch.p1() * u(rng), ch.t2()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu2_closed(ch, ch.t1(), ch.p2() * u(rng)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("weights are monotone in the private powers") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const ChannelParams ch = rich_channel(rng);
    const double x = 0.01 + ch.p1() * u(rng);
    const double y = 0.01 + ch.p2() * u(rng);
    const double h = 1e-3 * (1.0 + u(rng));
    CHECK(mu1_closed(ch, x, y + h) < mu1_closed(ch, x, y));
    CHECK(mu2_closed(ch, x + h, y) < mu2_closed(ch, x, y));
    if (y > ch.t2()) CHECK(mu1_closed(ch, x + h, y) > mu1_closed(ch, x, y));
    if (x > ch.t1()) CHECK(mu2_closed(ch, x, y + h) > mu2_closed(ch, x, y));
  }
}

TEST_CASE("delta-step gains") {
  const DeltaStepGains g = delta_step_gains(kE2, 30.0, 10.0);
  CHECK(g.private_r1_gain == doctest::Approx(1.0 / 33.0).epsilon(1e-14));
  CHECK(g.public_r1_gain == doctest::Approx(0.4 / 23.0).epsilon(1e-14));
  CHECK(g.private_r2_loss == doctest::Approx(0.4 * (1.0 / 23.0 - 1.0 / 13.0)).epsilon(1e-14));

  const DeltaStepGains z = delta_step_gains(kE2, 30.0, 0.0);
  CHECK(z.private_r2_loss == 0.0);

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const ChannelParams ch = rich_channel(rng);
    const double x = ch.p1() * u(rng);
    const double y = 0.01 + ch.p2() * u(rng);
    const DeltaStepGains d = delta_step_gains(ch, x, y);
    const double residual = d.private_r1_gain + mu1_closed(ch, x, y) * d.private_r2_loss - d.public_r1_gain;
    CHECK(std::abs(residual) <= 1e-12);
  }
}

TEST_CASE("stationary segment") {
  const double mu_a = 28.4 / 78.0;
  CHECK(solve_stationary_p2hat(kE2, mu_a) == 0.0);
  const double y = solve_stationary_p2hat(kE2, 0.5);
  CHECK(std::abs(mu2_closed(kE2, 30.0, y) - 0.5) <= 1e-12);
  double prev = -1.0;
  for (double mu = 0.37; mu < 0.79; mu += 0.01) {
    const double p = solve_stationary_p2hat(kE2, mu);
    CHECK(p > prev);
    prev = p;
  }
  CHECK_THROWS_AS(solve_stationary_p2hat(kE2, 0.2), ValidationError);
  CHECK_THROWS_AS(solve_stationary_p2hat(kE2, 0.99), ValidationError);
}

TEST_CASE("point D3") {
  const double d3 = point_d3(kE2);
  CHECK(d3 > kE2.t2());
  CHECK(d3 <= kE2.p2());
  CHECK(std::abs(mu1_closed(kE2, 30.0, d3) - mu2_closed(kE2, 30.0, d3)) <= 1e-12);
  CHECK(d3 == doctest::Approx(36.6258564519).epsilon(1e-10));

  const double sym = point_d3(kSym);
  CHECK(std::abs(mu1_closed(kSym, 20.0, sym) - mu2_closed(kSym, 20.0, sym)) <= 1e-12);
  CHECK(sym == doctest::Approx(20.0));

  CHECK_THROWS_AS(point_d3(ChannelParams(0.2, 0.4, 30.0, 7.0)), RegimeError);
  CHECK_THROWS_AS(point_d3(ChannelParams(0.2, 0.4, 9.0, 40.0)), RegimeError);
  CHECK_THROWS_AS(point_d3(ChannelParams(0.2, 0.4, 30.0, 8.0)), RegimeError);  // no root
}

TEST_CASE("coupled segment") {
  const PrivatePowers s = solve_coupled(kE2, 1.0);
  CHECK(s.p1hat == doctest::Approx(10.0));
  CHECK(s.p2hat == doctest::Approx(7.5));
  const double d3 = point_d3(kE2);
  const double mu_d3 = mu2_closed(kE2, 30.0, d3);
  CHECK(mu_d3 == doctest::Approx(0.794058049409).epsilon(1e-10));
  const PrivatePowers start = solve_coupled(kE2, mu_d3);
  CHECK(start.p1hat == doctest::Approx(30.0));
  CHECK(start.p2hat == doctest::Approx(d3));

  PrivatePowers prev = start;
  for (int k = 1; k <= 40; ++k) {
    const double mu = mu_d3 + (1.0 - mu_d3) * k / 41.0;
    const PrivatePowers p = solve_coupled(kE2, mu);
    CHECK(std::abs(mu1_closed(kE2, p.p1hat, p.p2hat) - mu) <= 1e-10);
    CHECK(std::abs(mu2_closed(kE2, p.p1hat, p.p2hat) - mu) <= 1e-10);
    CHECK(p.p1hat <= prev.p1hat + 1e-9);
    CHECK(p.p2hat <= prev.p2hat + 1e-9);
    prev = p;
  }
  CHECK_THROWS_AS(solve_coupled(kE2, 0.5), ValidationError);
  CHECK_THROWS_AS(solve_coupled(kE2, 1.5), ValidationError);
}

TEST_CASE("corner A") {
  const BoundaryPoint a = point_a(kE2);
  CHECK(a.rho == 0.0);
  CHECK(a.theta == 1.0);
  CHECK(a.regime == Regime::CornerA);
  CHECK(a.r1 == doctest::Approx(half_log2(31.0)).epsilon(1e-14));
  CHECK(a.r2 == doctest::Approx(half_log2(39.0 / 31.0)).epsilon(1e-13));
  CHECK(a.r2 == doctest::Approx(awgn_capacity(0.2 * 40.0, 31.0)).epsilon(1e-14));
  CHECK(a.mu == doctest::Approx(28.4 / 78.0).epsilon(1e-14));
}

TEST_CASE("lower trace of the reference channel") {
  const BoundaryTrace t = trace_lower_boundary(kE2, 200);
  CHECK(t.regime == TraceRegime::FullStructure);
  CHECK(t.tangent_condition);
  REQUIRE(t.points.size() == 200);
  CHECK(t.points.front().regime == Regime::CornerA);

  const double mu_d3 = mu2_closed(kE2, 30.0, point_d3(kE2));
  bool has_d3 = false;
  const BoundaryPoint* last_coupled = nullptr;
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    const BoundaryPoint& p = t.points[i];
    if (i > 0) CHECK(p.mu >= t.points[i - 1].mu);
    if (p.regime == Regime::StationaryUser2 && p.mu == mu_d3) has_d3 = true;
    if (p.regime == Regime::Coupled) last_coupled = &p;
    if (i > 0 && p.regime == Regime::StationaryUser2) CHECK(t.points[i - 1].regime != Regime::Coupled);
  }
  CHECK(has_d3);
  REQUIRE(last_coupled != nullptr);
  CHECK(std::abs(last_coupled->mu - 1.0) <= 1e-9);
  // Rates at the sum-rate split: public pair (r1_plus_2, r2_plus_1) plus the
  // private rates at (T1, T2).
  const double expected = half_log2(1 + 8 / 12.5) + half_log2(1 + 6.5 / 12.5) + half_log2(5.0) + half_log2(2.5);
  CHECK(last_coupled->r1 + last_coupled->r2 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("trace points agree with lower_point_at") {
  const BoundaryTrace t = trace_lower_boundary(kE2, 60);
  for (const BoundaryPoint& p : t.points) {
    if (p.regime == Regime::SumRateFront) continue;
    const BoundaryPoint q = lower_point_at(kE2, p.mu);
    CHECK(q.r1 == doctest::Approx(p.r1).epsilon(1e-9));
    CHECK(q.r2 == doctest::Approx(p.r2).epsilon(1e-9));
  }
  CHECK(lower_point_at(kE2, 0.1).regime == Regime::CornerA);
  CHECK_THROWS_AS(lower_point_at(kE2, 0.0), ValidationError);
  CHECK_THROWS_AS(lower_point_at(kE2, 2.0), ValidationError);
}

TEST_CASE("two-point trace is A and S") {
  const BoundaryTrace t = trace_lower_boundary(kE2, 2);
  REQUIRE(t.points.size() == 2);
  CHECK(t.points[0].regime == Regime::CornerA);
  CHECK(t.points[1].rho == doctest::Approx(2.0 / 3.0));
  CHECK(t.points[1].theta == doctest::Approx(0.8125));
  CHECK(t.points[1].mu == 1.0);
  CHECK_THROWS_AS(trace_lower_boundary(kE2, 1), ValidationError);
}

TEST_CASE("degenerate regimes") {
  const ChannelParams at_t1(0.2, 0.4, 10.0, 40.0);
  const BoundaryTrace front = trace_lower_boundary(at_t1, 50);
  CHECK(front.regime == TraceRegime::SumRateFrontOnly);
  const double r_sum = sum_rate_front(at_t1).r_sum;
  for (const BoundaryPoint& p : front.points) {
    CHECK(p.regime == Regime::SumRateFront);
    CHECK(std::abs(p.r1 + p.r2 - r_sum) <= 1e-9);
  }

  const BoundaryTrace corner = trace_lower_boundary(ChannelParams(0.2, 0.4, 5.0, 40.0), 50);
  CHECK(corner.regime == TraceRegime::CornerOnly);
  CHECK(corner.points.size() == 1);
  CHECK_FALSE(corner.report.empty());

  const BoundaryTrace stat = trace_lower_boundary(ChannelParams(0.2, 0.4, 30.0, 5.0), 50);
  CHECK(stat.regime == TraceRegime::StationaryOnly);
  CHECK(stat.points.back().theta == doctest::Approx(0.0));

  const BoundaryTrace no_d3 = trace_lower_boundary(ChannelParams(0.2, 0.4, 12.0, 9.0), 50);
  CHECK(no_d3.tangent_condition);
  CHECK(no_d3.regime == TraceRegime::NoCoupledSegment);
  CHECK(no_d3.points.back().theta == doctest::Approx(0.0));
}

TEST_CASE("clipping outside the tangent regime") {
  // P1(1-b) > P2(1-a): the trace hits the closed-form sum rate early.
  const BoundaryTrace t = trace_lower_boundary(swap_users(kE2), 100);
  CHECK_FALSE(t.tangent_condition);
  CHECK(t.regime == TraceRegime::ClippedAtSumRate);
  const double r_sum = sum_rate_front(swap_users(kE2)).r_sum;
  CHECK(t.points.back().r1 + t.points.back().r2 >= r_sum - 1e-12);
}

TEST_CASE("upper trace by user exchange") {
  const BoundaryTrace lower = trace_lower_boundary(kSym, 40);
  const BoundaryTrace upper = trace_upper_boundary(kSym, 40);
  REQUIRE(lower.points.size() == upper.points.size());
  for (std::size_t i = 0; i < lower.points.size(); ++i) {
    CHECK(upper.points[i].r1 == doctest::Approx(lower.points[i].r2).epsilon(1e-12));
    CHECK(upper.points[i].r2 == doctest::Approx(lower.points[i].r1).epsilon(1e-12));
    CHECK(upper.points[i].mu == doctest::Approx(1.0 / lower.points[i].mu).epsilon(1e-12));
  }

  const BoundaryTrace direct = trace_lower_boundary(kE2, 30);
  const BoundaryTrace twice = trace_upper_boundary(swap_users(kE2), 30);
  REQUIRE(direct.points.size() == twice.points.size());
  for (std::size_t i = 0; i < direct.points.size(); ++i) {
    CHECK(twice.points[i].r1 == direct.points[i].r2);
    CHECK(twice.points[i].r2 == direct.points[i].r1);
    CHECK(twice.points[i].theta == direct.points[i].rho);
  }
}

TEST_CASE("key points") {
  const KeyPoints kp = key_points(kE2);
  CHECK(kp.mu_at_a == doctest::Approx(28.4 / 78.0));
  CHECK(kp.d2_p2hat >= kE2.t2() - 1e-9);
  CHECK(kp.d2_p2hat == doctest::Approx(kE2.t2()).epsilon(1e-10));
  CHECK(kp.point_d1.p2hat == doctest::Approx(kE2.t2()));
  CHECK(kp.d3_p2hat > kE2.t2());
  CHECK(kp.s_split.rho() == doctest::Approx(2.0 / 3.0));
  CHECK(kp.s_split.theta() == doctest::Approx(0.8125));
  CHECK(kp.point_s.mu == 1.0);
  CHECK_THROWS_AS(key_points(ChannelParams(0.2, 0.4, 30.0, 8.0)), RegimeError);
}

TEST_CASE("regime names") {
  CHECK(to_string(Regime::StationaryUser2) == "StationaryUser2");
  CHECK(to_string(TraceRegime::ClippedAtSumRate) == "ClippedAtSumRate");
}
