#pragma once

#include <cmath>

namespace lrc {

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Minimizes f on [lo, hi]: scan `grid_points` equispaced points (both endpoints
/// included), then golden-section refinement inside the bracket around the best
/// grid point until it is narrower than `x_tolerance`. The refined point replaces
/// the grid point only on strict improvement, so ties resolve to the smallest x.
template <typename F>
Minimum minimize_on_interval(F&& f, double lo, double hi, int grid_points = 2048,
                             double x_tolerance = 1e-9) {
  if (grid_points < 2 || hi <= lo) return {lo, f(lo)};
  const double step = (hi - lo) / (grid_points - 1);
  Minimum best{lo, f(lo)};
  int best_k = 0;
  for (int k = 1; k < grid_points; ++k) {
    const double x = (k == grid_points - 1) ? hi : lo + step * k;
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_k = k;
    }
  }

  double a = best_k > 0 ? lo + step * (best_k - 1) : lo;
  double b = best_k < grid_points - 1 ? lo + step * (best_k + 1) : hi;
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const Minimum refined = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  if (refined.value < best.value) best = refined;
  return best;
}

}  // namespace lrc
