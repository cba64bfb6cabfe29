#pragma once

#include <cmath>
#include <string>

#include "gic_region/errors.hpp"

namespace gic {

inline constexpr int kBisectionIterationCap = 200;

/// Root of a continuous function with a sign change on [lo, hi]. Halves the
/// bracket until the midpoint stops moving, |f| hits zero, or the iteration
/// cap is reached. An endpoint that is already an exact root is returned.
template <class F>
double bisect_root(F&& f, double lo, double hi, const char* what) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw NumericError(std::string(what) + ": no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  for (int it = 0; it < kBisectionIterationCap; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gic
