#include "gic_region/boundary_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gic_region/bisect.hpp"
#include "gic_region/errors.hpp"

namespace gic {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool approx_equal(double x, double y) { return std::abs(x - y) <= kRelTol * std::max(std::abs(x), std::abs(y)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// mu2 along the stationary segment, P1hat pinned at P1.
double stationary_mu(const ChannelParams& ch, double p2hat) { return mu2_closed(ch, ch.p1(), p2hat); }

BoundaryPoint stationary_point(const ChannelParams& ch, double p2hat, double mu) {
  return assemble_point(ch, PowerSplit::from_private(ch, ch.p1(), p2hat), mu, Regime::StationaryUser2);
}

BoundaryPoint coupled_point(const ChannelParams& ch, double mu) {
  const PrivatePowers pp = solve_coupled(ch, mu);
  return assemble_point(ch, PowerSplit::from_private(ch, pp.p1hat, pp.p2hat), mu, Regime::Coupled);
}

// Where the stationary segment stops when there is no coupled segment.
double stationary_end_p2hat(const ChannelParams& ch, bool has_d3, double d3) { return has_d3 ? d3 : ch.p2(); }

std::optional<double> try_point_d3(const ChannelParams& ch) {
  try {
    return point_d3(ch);
  } catch (const RegimeError&) {
    return std::nullopt;
  }
}

bool p1_at_threshold(const ChannelParams& ch) { return approx_equal(ch.p1(), ch.t1()); }

}  // namespace

double mu1_closed(const ChannelParams& ch, double p1hat, double p2hat) {
  if (p2hat <= 0.0) return kInf;
  const double a = ch.a();
  const double b = ch.b();
  return (b * p1hat + 1.0) * (p2hat - b - a * b * p2hat + 1.0) /
         (b * p2hat * (p1hat + a * p2hat + 1.0));
}

double mu2_closed(const ChannelParams& ch, double p1hat, double p2hat) {
  if (p1hat <= 0.0) return kInf;
  const double a = ch.a();
  const double b = ch.b();
  return (a * p2hat + 1.0) * (p1hat - a - a * b * p1hat + 1.0) /
         (a * p1hat * (p2hat + b * p1hat + 1.0));
}

DeltaStepGains delta_step_gains(const ChannelParams& ch, double p1hat, double p2hat) {
  const double a = ch.a();
  const double b = ch.b();
  DeltaStepGains g;
  g.private_r1_gain = 1.0 / (p1hat + a * p2hat + 1.0);
  g.public_r1_gain = b / (b * p1hat + p2hat + 1.0);
  g.private_r2_loss = b * (1.0 / (b * p1hat + p2hat + 1.0) - 1.0 / (b * p1hat + 1.0));
  return g;
}

double solve_stationary_p2hat(const ChannelParams& ch, double mu) {
  const double at_zero = stationary_mu(ch, 0.0);
  const double at_full = stationary_mu(ch, ch.p2());
  const double lo = std::min(at_zero, at_full);
  const double hi = std::max(at_zero, at_full);
  if (!(mu >= lo * (1.0 - kRelTol) && mu <= hi * (1.0 + kRelTol))) {
    throw ValidationError("mu=" + fmt(mu) + " outside the stationary interval [" + fmt(lo) + ", " +
                          fmt(hi) + "]");
  }
  if (approx_equal(mu, at_zero)) return 0.0;
  if (approx_equal(mu, at_full)) return ch.p2();
  return bisect_root([&](double y) { return stationary_mu(ch, y) - mu; }, 0.0, ch.p2(),
                     "solve_stationary_p2hat");
}

double point_d3(const ChannelParams& ch) {
  const double t1 = ch.t1();
  const double t2 = ch.t2();
  if (!(ch.p1() > t1) || !(ch.p2() > t2)) {
    throw RegimeError("D3 requires P1 > T1 and P2 > T2 (P1=" + fmt(ch.p1()) + ", T1=" + fmt(t1) +
                      ", P2=" + fmt(ch.p2()) + ", T2=" + fmt(t2) + ")");
  }
  auto gap = [&](double x) { return mu1_closed(ch, ch.p1(), x) - mu2_closed(ch, ch.p1(), x); };
  const double at_full = gap(ch.p2());
  if (std::abs(at_full) <= kRelTol) return ch.p2();
  if (at_full > 0.0) {
    throw RegimeError("mu1 = mu2 has no root in (T2, P2]: the stationary segment reaches theta = 0 "
                      "before D3");
  }
  return bisect_root(gap, t2, ch.p2(), "point_d3");
}

PrivatePowers solve_coupled(const ChannelParams& ch, double mu) {
  const double d3 = point_d3(ch);
  const double mu_d3 = mu2_closed(ch, ch.p1(), d3);
  if (!(mu >= mu_d3 * (1.0 - kRelTol) && mu <= 1.0 + kRelTol)) {
    throw ValidationError("mu=" + fmt(mu) + " outside the coupled interval [" + fmt(mu_d3) + ", 1]");
  }
  if (approx_equal(mu, 1.0)) return {ch.t1(), ch.t2()};
  if (approx_equal(mu, mu_d3)) return {ch.p1(), d3};

  const double t2 = ch.t2();
  // mu1 decreases in P2hat, equals 1 at T2 and tends to 0.
  auto p2hat_for = [&](double x) {
    double hi = std::max(ch.p2(), 2.0 * t2);
    int doublings = 0;
    while (mu1_closed(ch, x, hi) > mu) {
      hi *= 2.0;
      if (++doublings > kBisectionIterationCap) {
        throw NumericError("solve_coupled: cannot bracket P2hat for mu=" + fmt(mu) + " at P1hat=" + fmt(x));
      }
    }
    return bisect_root([&](double y) { return mu1_closed(ch, x, y) - mu; }, t2, hi, "solve_coupled/inner");
  };
  const double x = bisect_root([&](double p1hat) { return mu2_closed(ch, p1hat, p2hat_for(p1hat)) - mu; },
                               ch.t1(), ch.p1(), "solve_coupled/outer");
  const double y = p2hat_for(x);

  const double res1 = std::abs(mu1_closed(ch, x, y) - mu);
  const double res2 = std::abs(mu2_closed(ch, x, y) - mu);
  if (res1 > 1e-10 || res2 > 1e-10) {
    throw NumericError("solve_coupled did not converge at mu=" + fmt(mu) + ": P1hat=" + fmt(x) +
                       " P2hat=" + fmt(y) + " residuals " + fmt(res1) + ", " + fmt(res2));
  }
  return {x, y};
}

BoundaryPoint assemble_point(const ChannelParams& ch, const PowerSplit& split, double mu, Regime regime) {
  const MacCorners corners = corner_rates(ch, split);
  const PublicRatePair pub = public_rate_pair(corners);
  const double p1h = split.p1hat(ch);
  const double p2h = split.p2hat(ch);
  BoundaryPoint pt;
  pt.mu = mu;
  pt.rho = split.rho();
  pt.theta = split.theta();
  pt.p1hat = p1h;
  pt.p2hat = p2h;
  pt.r1 = pub.r_u1 + private_rate_user1(ch, p1h, p2h);
  pt.r2 = pub.r_u2 + private_rate_user2(ch, p1h, p2h);
  pt.regime = regime;
  pt.mac_case = classify(corners).id;
  return pt;
}

BoundaryPoint point_a(const ChannelParams& ch) {
  return assemble_point(ch, PowerSplit(0.0, 1.0), stationary_mu(ch, 0.0), Regime::CornerA);
}

BoundaryPoint lower_point_at(const ChannelParams& ch, double mu) {
  if (!(mu > 0.0 && mu <= 1.0 + kRelTol)) throw ValidationError("mu must lie in (0, 1], got " + fmt(mu));
  BoundaryPoint a = point_a(ch);
  a.mu = mu;
  if (!(ch.p1() > ch.t1()) || p1_at_threshold(ch)) return a;  // user 1 stays fully private
  const double mu_a = stationary_mu(ch, 0.0);
  if (mu <= mu_a) return a;

  const std::optional<double> d3 = ch.p2() > ch.t2() ? try_point_d3(ch) : std::nullopt;
  const double end_p2hat = stationary_end_p2hat(ch, d3.has_value(), d3.value_or(0.0));
  const double mu_end = stationary_mu(ch, end_p2hat);
  if (mu <= mu_end) return stationary_point(ch, solve_stationary_p2hat(ch, mu), mu);
  if (!d3) return stationary_point(ch, end_p2hat, mu);
  return coupled_point(ch, std::min(mu, 1.0));
}

KeyPoints key_points(const ChannelParams& ch) {
  const double d3 = point_d3(ch);  // checks P1 > T1, P2 > T2
  KeyPoints kp;
  kp.point_a = point_a(ch);
  kp.mu_at_a = kp.point_a.mu;
  kp.point_d1 = stationary_point(ch, ch.t2(), stationary_mu(ch, ch.t2()));
  kp.d2_p2hat = bisect_root([&](double y) { return mu1_closed(ch, ch.p1(), y) - 1.0; },
                            std::min(ch.t2(), ch.p2()) * 0.5, ch.p2(), "point_d2");
  kp.point_d2 = stationary_point(ch, kp.d2_p2hat, stationary_mu(ch, kp.d2_p2hat));
  kp.d3_p2hat = d3;
  kp.point_d3 = stationary_point(ch, d3, stationary_mu(ch, d3));
  const SumRateFront front = sum_rate_front(ch);
  kp.s_split = PowerSplit(front.rho_s, front.theta_s);
  kp.point_s = assemble_point(ch, kp.s_split, 1.0, Regime::Coupled);
  return kp;
}

namespace {

struct TraceBuilder {
  const ChannelParams& ch;
  std::optional<double> r_sum;
  BoundaryTrace trace;
  bool clipped = false;

  // Returns false once the trace has been clipped at the sum-rate front.
  bool push(const BoundaryPoint& pt) {
    trace.points.push_back(pt);
    if (r_sum && pt.regime != Regime::CornerA && pt.mu < 1.0 - kRelTol && pt.r1 + pt.r2 >= *r_sum - kRelTol) {
      clipped = true;
      std::ostringstream os;
      os << "; clipped at mu=" << fmt(pt.mu) << " where r1+r2 reached r_sum=" << fmt(*r_sum);
      trace.report += os.str();
      return false;
    }
    return true;
  }
};

// Uniform grid of n values in (lo, hi], hi included.
std::vector<double> uniform_tail(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= n; ++k) {
    out.push_back(k == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
  }
  return out;
}

// n weights in (lo, 1]; the gap to 1 shrinks geometrically down to 1e-6 of
// the segment width, last value exactly 1.
std::vector<double> geometric_to_one(double lo, std::size_t n) {
  std::vector<double> out;
  const double width = 1.0 - lo;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n) {
      out.push_back(1.0);
    } else {
      const double frac = static_cast<double>(k) / static_cast<double>(n - 1);
      out.push_back(1.0 - width * std::pow(1e-6, frac));
    }
  }
  return out;
}

void trace_front_only(const ChannelParams& ch, std::size_t num_points, BoundaryTrace& trace) {
  trace.regime = TraceRegime::SumRateFrontOnly;
  const double theta_end = ch.p2() > ch.t2() ? 1.0 - ch.t2() / ch.p2() : 0.0;
  trace.report = "P1 = T1: the lower part coincides with the sum-rate front; theta sweeps from 1 to " +
                 fmt(theta_end) + " with rho = 0";
  const std::size_t n = std::max<std::size_t>(num_points, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    const double theta = k + 1 == n ? theta_end : 1.0 + (theta_end - 1.0) * t;
    trace.points.push_back(assemble_point(ch, PowerSplit(0.0, theta), 1.0, Regime::SumRateFront));
  }
}

// Points strictly beyond the lexicographic-max vertex along the max-sum face
// of the public polygon at (rho_S, theta_S).
std::vector<Vertex> front_face_walk(const MacCorners& corners, std::size_t n) {
  std::vector<Vertex> poly = intersection_polygon(corners);
  double best = -1.0;
  for (const Vertex& v : poly) best = std::max(best, v.x + v.y);
  std::vector<Vertex> face;
  for (const Vertex& v : poly) {
    if (v.x + v.y >= best - 1e-12) face.push_back(v);
  }
  if (face.size() < 2 || n == 0) return {};
  const auto [lo_it, hi_it] = std::minmax_element(face.begin(), face.end(),
                                                  [](const Vertex& l, const Vertex& r) { return l.x < r.x; });
  const Vertex start = *hi_it;  // max r_u1 end
  const Vertex stop = *lo_it;   // max r_u2 end
  std::vector<Vertex> out;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    out.push_back({start.x + (stop.x - start.x) * t, start.y + (stop.y - start.y) * t});
  }
  return out;
}

}  // namespace

BoundaryTrace trace_lower_boundary(const ChannelParams& ch, std::size_t num_points) {
  if (num_points < 2) throw ValidationError("trace needs at least 2 points");
  const double t1 = ch.t1();
  const double t2 = ch.t2();

  TraceBuilder b{ch, std::nullopt, {}};
  b.trace.tangent_condition = ch.p1() * (1.0 - ch.b()) < ch.p2() * (1.0 - ch.a());

  if (p1_at_threshold(ch)) {
    trace_front_only(ch, num_points, b.trace);
    return b.trace;
  }
  if (ch.p1() < t1) {
    b.trace.regime = TraceRegime::CornerOnly;
    b.trace.report = "P1 < T1: user 1 stays fully private on the lower part; it reduces to corner A";
    b.trace.points.push_back(point_a(ch));
    return b.trace;
  }

  const BoundaryPoint a = point_a(ch);
  const std::optional<double> d3 = ch.p2() > t2 ? try_point_d3(ch) : std::nullopt;
  // Only outside the tangent regime can the trace reach the front early.
  if (ch.p2() > t2 && !b.trace.tangent_condition) b.r_sum = sum_rate_front(ch).r_sum;

  if (!d3) {
    b.trace.regime = ch.p2() <= t2 ? TraceRegime::StationaryOnly : TraceRegime::NoCoupledSegment;
    b.trace.report = ch.p2() <= t2
                         ? "P2 <= T2: mu1 stays above 1, the stationary segment runs to theta = 0"
                         : "mu1 = mu2 has no root in (T2, P2]: the stationary segment runs to theta = 0";
    if (!b.push(a)) {
      b.trace.regime = TraceRegime::ClippedAtSumRate;
      return b.trace;
    }
    const double mu_end = stationary_mu(ch, ch.p2());
    for (double mu : uniform_tail(a.mu, mu_end, num_points - 1)) {
      const double y = mu == mu_end ? ch.p2() : solve_stationary_p2hat(ch, mu);
      if (!b.push(stationary_point(ch, y, mu))) {
        b.trace.regime = TraceRegime::ClippedAtSumRate;
        break;
      }
    }
    return b.trace;
  }

  b.trace.regime = TraceRegime::FullStructure;
  const double mu_d3 = stationary_mu(ch, *d3);
  b.trace.report = "A -> D3 (T2breve=" + fmt(*d3) + ", mu=" + fmt(mu_d3) + ") -> S";
  if (!b.push(a)) {
    b.trace.regime = TraceRegime::ClippedAtSumRate;
    return b.trace;
  }

  const SumRateFront front = sum_rate_front(ch);
  const PowerSplit s_split(front.rho_s, front.theta_s);

  if (num_points == 2) {
    b.push(assemble_point(ch, s_split, 1.0, Regime::Coupled));
    return b.trace;
  }

  const std::vector<Vertex> face_probe = front_face_walk(corner_rates(ch, s_split), 1);
  const std::size_t n_front = face_probe.empty() ? 0 : std::max<std::size_t>(1, num_points / 10);
  const std::size_t remaining = num_points - 1 - std::min(n_front, num_points - 3);
  const double span = 1.0 - a.mu;
  std::size_t n_stat = span > 0.0
                           ? static_cast<std::size_t>(std::lround(static_cast<double>(remaining) * (mu_d3 - a.mu) / span))
                           : 1;
  n_stat = std::clamp<std::size_t>(n_stat, 1, remaining - 1);
  const std::size_t n_coupled = remaining - n_stat;

  for (double mu : uniform_tail(a.mu, mu_d3, n_stat)) {
    const double y = mu == mu_d3 ? *d3 : solve_stationary_p2hat(ch, mu);
    if (!b.push(stationary_point(ch, y, mu))) {
      b.trace.regime = TraceRegime::ClippedAtSumRate;
      return b.trace;
    }
  }
  for (double mu : geometric_to_one(mu_d3, n_coupled)) {
    const BoundaryPoint pt = mu == 1.0 ? assemble_point(ch, s_split, 1.0, Regime::Coupled) : coupled_point(ch, mu);
    if (!b.push(pt)) {
      b.trace.regime = TraceRegime::ClippedAtSumRate;
      return b.trace;
    }
  }

  const MacCorners s_corners = corner_rates(ch, s_split);
  const double v1 = private_rate_user1(ch, s_split.p1hat(ch), s_split.p2hat(ch));
  const double v2 = private_rate_user2(ch, s_split.p1hat(ch), s_split.p2hat(ch));
  for (const Vertex& v : front_face_walk(s_corners, n_front)) {
    BoundaryPoint pt = assemble_point(ch, s_split, 1.0, Regime::SumRateFront);
    pt.r1 = v.x + v1;
    pt.r2 = v.y + v2;
    b.trace.points.push_back(pt);
  }
  if (n_front == 0) b.trace.report += "; public pair at S is not on the sum-rate face (front collapses to S)";
  return b.trace;
}

BoundaryTrace trace_upper_boundary(const ChannelParams& ch, std::size_t num_points) {
  BoundaryTrace t = trace_lower_boundary(swap_users(ch), num_points);
  for (BoundaryPoint& pt : t.points) {
    std::swap(pt.rho, pt.theta);
    std::swap(pt.p1hat, pt.p2hat);
    std::swap(pt.r1, pt.r2);
    pt.mu = 1.0 / pt.mu;
    pt.mac_case = classify(corner_rates(ch, PowerSplit(pt.rho, pt.theta))).id;
  }
  t.tangent_condition = ch.p2() * (1.0 - ch.a()) < ch.p1() * (1.0 - ch.b());
  return t;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::CornerA: return "CornerA";
    case Regime::StationaryUser2: return "StationaryUser2";
    case Regime::Coupled: return "Coupled";
    case Regime::SumRateFront: return "SumRateFront";
  }
  return "?";
}

std::string_view to_string(TraceRegime regime) {
  switch (regime) {
    case TraceRegime::CornerOnly: return "CornerOnly";
    case TraceRegime::SumRateFrontOnly: return "SumRateFrontOnly";
    case TraceRegime::StationaryOnly: return "StationaryOnly";
    case TraceRegime::NoCoupledSegment: return "NoCoupledSegment";
    case TraceRegime::ClippedAtSumRate: return "ClippedAtSumRate";
    case TraceRegime::FullStructure: return "FullStructure";
  }
  return "?";
}

}  // namespace gic
