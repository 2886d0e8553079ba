#pragma once

#include <cmath>

#include "revline/taylor.hpp"

namespace revline::bumps {

// Smooth flat bump on (0,1), normalized so max B = 1 (attained at 1/2):
//   B(x) = exp(4 - 1/(x(1-x))),  B = 0 outside (0,1).
// All one-sided derivatives vanish at 0 and 1.
inline double bump01(double x) {
  if (x <= 1e-9 || x >= 1.0 - 1e-9) return 0.0;
  return std::exp(4.0 - 1.0 / (x * (1.0 - x)));
}

inline TaylorPoly bump01(const TaylorPoly& x) {
  if (x.value() <= 1e-9 || x.value() >= 1.0 - 1e-9)
    return TaylorPoly(x.order(), 0.0);
  return exp(4.0 - 1.0 / (x * (1.0 - x)));
}

inline double bump01_derivative(double x) {
  if (x <= 1e-9 || x >= 1.0 - 1e-9) return 0.0;
  const double u = x * (1.0 - x);
  return bump01(x) * (1.0 - 2.0 * x) / (u * u);
}

/// 1 / max|B'|: the critical amplitude for x + a*B(x) to stay monotone.
/// Computed once numerically (dense scan + ternary refinement) and cached;
/// bump amplitudes elsewhere are expressed as fractions of this bound.
inline double amplitude_scale() {
  static const double scale = [] {
    double best_x = 0.25;
    double best = 0.0;
    for (int i = 1; i < 20000; ++i) {
      const double x = i / 20000.0;
      const double d = std::abs(bump01_derivative(x));
      if (d > best) {
        best = d;
        best_x = x;
      }
    }
    double lo = best_x - 1e-3, hi = best_x + 1e-3;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (std::abs(bump01_derivative(m1)) < std::abs(bump01_derivative(m2)))
        lo = m1;
      else
        hi = m2;
    }
    return 1.0 / std::abs(bump01_derivative(0.5 * (lo + hi)));
  }();
  return scale;
}

// Smooth cutoff: 1 for t <= 0, 0 for t >= 1, flat at both ends. Built from
// the one-sided mollifier e^{-1/t} as a two-term partition of unity.
inline double one_sided(double t) {
  return t <= 1e-9 ? 0.0 : std::exp(-1.0 / t);
}

inline TaylorPoly one_sided(const TaylorPoly& t) {
  if (t.value() <= 1e-9) return TaylorPoly(t.order(), 0.0);
  return exp(-1.0 / t);
}

inline double cutoff(double t) {
  if (t <= 1e-9) return 1.0;
  if (t >= 1.0 - 1e-9) return 0.0;
  const double a = one_sided(1.0 - t), b = one_sided(t);
  return a / (a + b);
}

inline TaylorPoly cutoff(const TaylorPoly& t) {
  if (t.value() <= 1e-9) return TaylorPoly(t.order(), 1.0);
  if (t.value() >= 1.0 - 1e-9) return TaylorPoly(t.order(), 0.0);
  const TaylorPoly a = one_sided(1.0 - t), b = one_sided(t);
  return a / (a + b);
}

}  // namespace revline::bumps
