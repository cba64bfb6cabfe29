#include "gic_region/hk_region.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "gic_region/errors.hpp"
#include "gic_region/polygon.hpp"

namespace gic {

namespace {

enum Layer { kU1 = 1, kV1 = 2, kU2 = 4, kV2 = 8 };

struct Received {
  double u1, v1, u2, v2;
};

// Received layer powers at Y1 (V2 is pure interference there) and Y2.
Received at_y1(const ChannelParams& ch, const PowerSplit& s) {
  return {s.p1_public(ch), s.p1hat(ch), ch.a() * s.p2_public(ch), ch.a() * s.p2hat(ch)};
}

Received at_y2(const ChannelParams& ch, const PowerSplit& s) {
  return {ch.b() * s.p1_public(ch), ch.b() * s.p1hat(ch), s.p2_public(ch), s.p2hat(ch)};
}

double sum_of(const Received& r, unsigned mask) {
  double s = 0.0;
  if (mask & kU1) s += r.u1;
  if (mask & kV1) s += r.v1;
  if (mask & kU2) s += r.u2;
  if (mask & kV2) s += r.v2;
  return s;
}

// I(signal; Y | given) for jointly Gaussian layers.
double gaussian_mi(const Received& r, unsigned signal, unsigned given) {
  const unsigned all = kU1 | kV1 | kU2 | kV2;
  const double residual = 1.0 + sum_of(r, all & ~given & ~signal);
  return awgn_capacity(sum_of(r, signal & ~given), residual);
}

void check_mu(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw ValidationError("mu must lie in (0, 1], got " + std::to_string(mu));
}

double grid_value(std::size_t i, std::size_t n) {
  return i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

double ReducedBounds::r_u2_max() const noexcept {
  return std::max(0.0, std::min({u2_at_y1, sum_at_y1 - r_u1, sum_at_y2 - r_u1}));
}

HkBounds hk_bounds(const ChannelParams& ch, const PowerSplit& split) {
  const Received y1 = at_y1(ch, split);
  const Received y2 = at_y2(ch, split);
  HkBounds b;
  b.rhs = {
      gaussian_mi(y1, kU1, kU2 | kV1),
      gaussian_mi(y2, kU1, kU2 | kV2),
      gaussian_mi(y1, kU2, kU1 | kV1),
      gaussian_mi(y2, kU2, kU1 | kV2),
      gaussian_mi(y1, kV1, kU1 | kU2),
      gaussian_mi(y2, kV2, kU1 | kU2),
      gaussian_mi(y1, kU1 | kU2, kV1),
      gaussian_mi(y2, kU1 | kU2, kV2),
      gaussian_mi(y1, kU1 | kV1, kU2),
      gaussian_mi(y2, kU2 | kV2, kU1),
      gaussian_mi(y1, kU2 | kV1, kU1),
      gaussian_mi(y2, kU1 | kV2, kU2),
      gaussian_mi(y1, kU1 | kU2 | kV1, 0),
      gaussian_mi(y2, kU1 | kU2 | kV2, 0),
  };
  return b;
}

ReducedBounds reduced_bounds(const ChannelParams& ch, const PowerSplit& split) {
  const double u1 = split.p1_public(ch);
  const double v1 = split.p1hat(ch);
  const double u2 = split.p2_public(ch);
  const double v2 = split.p2hat(ch);
  const double a = ch.a();
  const double b = ch.b();
  // Private layers are noise for the public pair.
  const double floor1 = v1 + a * v2 + 1.0;
  const double floor2 = b * v1 + v2 + 1.0;
  ReducedBounds r;
  r.r_v1 = awgn_capacity(v1, a * v2 + 1.0);
  r.r_v2 = awgn_capacity(v2, b * v1 + 1.0);
  r.r_u1 = awgn_capacity(b * u1, floor2);
  r.u2_at_y1 = awgn_capacity(a * u2, floor1);
  r.sum_at_y1 = awgn_capacity(u1 + a * u2, floor1);
  r.sum_at_y2 = awgn_capacity(b * u1 + u2, floor2);
  return r;
}

HkRates lp_optimize_full(const ChannelParams& ch, const PowerSplit& split, double mu) {
  check_mu(mu);
  const HkBounds hk = hk_bounds(ch, split);
  const double v1 = hk(5);
  const double v2 = hk(6);
  const std::array<HalfPlane, 14> constraints{{
      {-1.0, 0.0, 0.0},
      {0.0, -1.0, 0.0},
      {1.0, 0.0, hk(1)},
      {1.0, 0.0, hk(2)},
      {0.0, 1.0, hk(3)},
      {0.0, 1.0, hk(4)},
      {1.0, 1.0, hk(7)},
      {1.0, 1.0, hk(8)},
      {1.0, 0.0, hk(9) - v1},
      {0.0, 1.0, hk(10) - v2},
      {0.0, 1.0, hk(11) - v1},
      {1.0, 0.0, hk(12) - v2},
      {1.0, 1.0, hk(13) - v1},
      {1.0, 1.0, hk(14) - v2},
  }};
  const std::vector<Vertex> vertices = enumerate_vertices(constraints, 1e-12);
  if (vertices.empty()) throw NumericError("HK residual polytope is empty");

  const Vertex* best = &vertices.front();
  for (const Vertex& v : vertices) {
    const double value = v.x + mu * v.y;
    const double incumbent = best->x + mu * best->y;
    if (value > incumbent + 1e-12 || (value >= incumbent - 1e-12 && v.x > best->x)) best = &v;
  }
  return {std::max(best->x, 0.0), std::max(best->y, 0.0), v1, v2};
}

HkRates lp_optimize_reduced(const ChannelParams& ch, const PowerSplit& split, double mu) {
  check_mu(mu);
  const ReducedBounds r = reduced_bounds(ch, split);
  return {r.r_u1, r.r_u2_max(), r.r_v1, r.r_v2};
}

std::vector<std::size_t> active_constraints(const ChannelParams& ch, const PowerSplit& split,
                                            const HkRates& x, double tol) {
  const HkBounds hk = hk_bounds(ch, split);
  const std::array<double, kNumHkConstraints> lhs{
      x.r_u1,
      x.r_u1,
      x.r_u2,
      x.r_u2,
      x.r_v1,
      x.r_v2,
      x.r_u1 + x.r_u2,
      x.r_u1 + x.r_u2,
      x.r_u1 + x.r_v1,
      x.r_u2 + x.r_v2,
      x.r_u2 + x.r_v1,
      x.r_u1 + x.r_v2,
      x.r_u1 + x.r_u2 + x.r_v1,
      x.r_u1 + x.r_u2 + x.r_v2,
  };
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < kNumHkConstraints; ++k) {
    if (hk.rhs[k] - lhs[k] <= tol) active.push_back(k + 1);
  }
  return active;
}

std::size_t worker_threads() {
  std::size_t n = 0;
  if (const char* env = std::getenv("GIC_REGION_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') n = v;
  }
  if (n == 0) n = std::thread::hardware_concurrency();
  return std::max<std::size_t>(n, 1);
}

std::vector<SplitSearchResult> hk_weighted_sum_over_splits(const ChannelParams& ch,
                                                           const std::vector<double>& mus,
                                                           std::size_t n) {
  if (n < 2) throw ValidationError("grid resolution must be at least 2");
  for (double mu : mus) check_mu(mu);

  struct Best {
    double value = -1.0;
    std::size_t index = 0;  // row-major rho * n + theta
  };
  const std::size_t workers = std::min(worker_threads(), n);
  std::vector<std::vector<Best>> partial(workers, std::vector<Best>(mus.size()));

  // Worker w scans the rho rows w, w + workers, ...; within a worker the scan
  // is in increasing index order, so strict > keeps the first maximizer.
  auto scan = [&](std::size_t w) {
    std::vector<Best>& best = partial[w];
    for (std::size_t i = w; i < n; i += workers) {
      const double rho = grid_value(i, n);
      for (std::size_t j = 0; j < n; ++j) {
        const ReducedBounds r = reduced_bounds(ch, PowerSplit(rho, grid_value(j, n)));
        const double r1 = r.r_u1 + r.r_v1;
        const double r2 = r.r_u2_max() + r.r_v2;
        for (std::size_t m = 0; m < mus.size(); ++m) {
          const double value = r1 + mus[m] * r2;
          if (value > best[m].value) best[m] = {value, i * n + j};
        }
      }
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(scan, w);
    for (std::thread& t : pool) t.join();
  }

  std::vector<SplitSearchResult> out;
  for (std::size_t m = 0; m < mus.size(); ++m) {
    Best best;
    for (const auto& p : partial) {
      const Best& c = p[m];
      if (c.value > best.value || (c.value == best.value && c.index < best.index)) best = c;
    }
    out.push_back({best.value, PowerSplit(grid_value(best.index / n, n), grid_value(best.index % n, n))});
  }
  return out;
}

SplitSearchResult hk_weighted_sum_over_splits(const ChannelParams& ch, double mu,
                                              std::size_t grid_resolution) {
  return hk_weighted_sum_over_splits(ch, std::vector<double>{mu}, grid_resolution).front();
}

}  // namespace gic
