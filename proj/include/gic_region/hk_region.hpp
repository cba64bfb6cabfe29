#pragma once

// Han-Kobayashi constraints for Gaussian inputs with a fixed power split.
//
// Layers: public U1 (power u1 = rho P1), private V1 (v1 = P1hat), public U2
// (u2 = theta P2), private V2 (v2 = P2hat). Received powers:
//
//   Y1:  u1, v1, a u2, a v2   + unit noise
//   Y2:  b u1, b v1, u2, v2   + unit noise
//
// For jointly Gaussian layers I(S; Y | G) = 0.5 log2(var(Y|G) / var(Y|G,S)),
// where conditioning on a layer removes its received power. V2 is never
// decoded at Y1 and V1 never at Y2, so with C(s, n) = 0.5 log2(1 + s/n):
//
//   HK1   R_U1             <= I(U1;Y1|U2,V1)  = C(u1,            a v2 + 1)
//   HK2   R_U1             <= I(U1;Y2|U2,V2)  = C(b u1,          b v1 + 1)
//   HK3   R_U2             <= I(U2;Y1|U1,V1)  = C(a u2,          a v2 + 1)
//   HK4   R_U2             <= I(U2;Y2|U1,V2)  = C(u2,            b v1 + 1)
//   HK5   R_V1             <= I(V1;Y1|U1,U2)  = C(v1,            a v2 + 1)
//   HK6   R_V2             <= I(V2;Y2|U1,U2)  = C(v2,            b v1 + 1)
//   HK7   R_U1+R_U2        <= I(U1,U2;Y1|V1)  = C(u1 + a u2,     a v2 + 1)
//   HK8   R_U1+R_U2        <= I(U1,U2;Y2|V2)  = C(b u1 + u2,     b v1 + 1)
//   HK9   R_U1+R_V1        <= I(U1,V1;Y1|U2)  = C(u1 + v1,       a v2 + 1)
//   HK10  R_U2+R_V2        <= I(U2,V2;Y2|U1)  = C(u2 + v2,       b v1 + 1)
//   HK11  R_U2+R_V1        <= I(U2,V1;Y1|U1)  = C(a u2 + v1,     a v2 + 1)
//   HK12  R_U1+R_V2        <= I(U1,V2;Y2|U2)  = C(b u1 + v2,     b v1 + 1)
//   HK13  R_U1+R_U2+R_V1   <= I(U1,U2,V1;Y1)  = C(u1 + a u2 + v1, a v2 + 1)
//   HK14  R_U1+R_U2+R_V2   <= I(U1,U2,V2;Y2)  = C(b u1 + u2 + v2, b v1 + 1)
//
// HK5 and HK6 hold with equality at the optimum, which pins the private rates
// and leaves a 2-D LP in (R_U1, R_U2).

#include <array>
#include <cstddef>
#include <vector>

#include "gic_region/gic_core.hpp"

namespace gic {

inline constexpr std::size_t kNumHkConstraints = 14;

struct HkBounds {
  std::array<double, kNumHkConstraints> rhs{};

  /// 1-based constraint index, as in HK1..HK14.
  double operator()(std::size_t k) const { return rhs.at(k - 1); }
};

struct HkRates {
  double r_u1 = 0.0;
  double r_u2 = 0.0;
  double r_v1 = 0.0;
  double r_v2 = 0.0;

  double r1() const noexcept { return r_u1 + r_v1; }
  double r2() const noexcept { return r_u2 + r_v2; }
  double weighted(double mu) const noexcept { return r1() + mu * r2(); }
};

/// Remaining system once R_U1 is pinned to I(U1;Y2|U2).
struct ReducedBounds {
  double r_v1 = 0.0;          // I(V1;Y1|U1,U2)
  double r_v2 = 0.0;          // I(V2;Y2|U1,U2)
  double r_u1 = 0.0;          // I(U1;Y2|U2)
  double u2_at_y1 = 0.0;      // I(U2;Y1|U1)
  double sum_at_y1 = 0.0;     // I(U1,U2;Y1)
  double sum_at_y2 = 0.0;     // I(U1,U2;Y2)

  /// min(I(U2;Y1|U1), I(U1,U2;Y1) - R_U1, I(U1,U2;Y2) - R_U1), floored at 0.
  double r_u2_max() const noexcept;
};

HkBounds hk_bounds(const ChannelParams& ch, const PowerSplit& split);

ReducedBounds reduced_bounds(const ChannelParams& ch, const PowerSplit& split);

/// Maximizes R1 + mu R2 over HK1..HK14 with HK5, HK6 at equality, by vertex
/// enumeration in (R_U1, R_U2). Ties within 1e-12 go to the larger R_U1.
HkRates lp_optimize_full(const ChannelParams& ch, const PowerSplit& split, double mu);

/// Closed-form optimum of the reduced system: R_U1 pinned, R_U2 at its bound.
HkRates lp_optimize_reduced(const ChannelParams& ch, const PowerSplit& split, double mu);

/// 1-based indices of the HK constraints with slack <= tol at `rates`.
/// HK5 and HK6 count as active when the private rates sit on them.
std::vector<std::size_t> active_constraints(const ChannelParams& ch, const PowerSplit& split,
                                            const HkRates& rates, double tol = 1e-9);

struct SplitSearchResult {
  double best_value = 0.0;
  PowerSplit best_split{0.0, 0.0};
};

/// Grid search of lp_optimize_reduced over rho, theta in {0, 1/(n-1), ..., 1}.
/// Ties go to the smallest rho, then the smallest theta.
SplitSearchResult hk_weighted_sum_over_splits(const ChannelParams& ch, double mu,
                                              std::size_t grid_resolution);

/// Same search for several weights in one sweep; one result per weight.
std::vector<SplitSearchResult> hk_weighted_sum_over_splits(const ChannelParams& ch,
                                                           const std::vector<double>& mus,
                                                           std::size_t grid_resolution);

/// Worker count from GIC_REGION_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_threads();

}  // namespace gic
