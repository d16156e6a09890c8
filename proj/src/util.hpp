#pragma once

#include <chrono>
#include <cmath>
#include <vector>

#include "fnk/common.hpp"

namespace fnk::detail {

// Piecewise-linear interpolation over strictly increasing xs. Exact at the
// nodes (no arithmetic when x hits a knot), which keeps grid-aligned
// tabulations bit-stable.
inline double pwl_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                       double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  size_t lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (xs[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  if (x == xs[lo]) return ys[lo];
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

// Solves f(x) = y for increasing f on [lo, hi] by bisection, down to the
// last representable midpoint. Endpoint targets return the endpoints
// exactly, so boundary identities survive inversion.
template <class F>
double invert_increasing(F&& f, double y, double lo, double hi,
                         int max_iter = kMaxBisection) {
  if (y <= f(lo)) return lo;
  if (y >= f(hi)) return hi;
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval collapsed to adjacent doubles
    if (f(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Clamp an evaluated function value to [0, cap]; rounding slack only.
inline double clamp_value(double v, double cap = 1.0) {
  if (v < 0.0 && v >= -kClampSlack) return 0.0;
  if (v > cap && v <= cap + kClampSlack) return cap;
  return v;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }
 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace fnk::detail
