#pragma once

#include <string>
#include <vector>

#include "revline/smoothmap.hpp"

namespace revline {

struct GridSpec {
  double lo = -5.0;
  double hi = 5.0;
  int points = config::grid_points;
};

/// Auditable result of one sup-norm grid check: pass iff sup_error <= tol.
/// The worst point is the leftmost grid point attaining the sup.
struct CheckReport {
  std::string name;
  GridSpec grid;
  double tol = 0.0;
  double sup_error = 0.0;
  double worst_x = 0.0;
  bool pass = false;
};

/// sup |h(f(x)) - f^-1(h(x))|: one numeric inversion instead of two.
CheckReport check_reverses(const MapExpr& h, const MapExpr& f, GridSpec grid,
                           double tol);

/// sup |tau(tau(x)) - x|.
CheckReport check_involution(const MapExpr& tau, GridSpec grid, double tol);

/// sup |k(f(x)) - g(k(x))|.
CheckReport check_conjugation(const MapExpr& k, const MapExpr& f,
                              const MapExpr& g, GridSpec grid, double tol);

/// sup |f(x+1) - (f^-1(x)+1)|.
CheckReport check_wave(const MapExpr& f, GridSpec grid, double tol);

/// sup |f(x+p) - (f(x)+p)|.
CheckReport check_commutation(const MapExpr& f, double p, GridSpec grid,
                              double tol);

/// Locates the fixed points of an order preserving reverser h on the grid;
/// each must be fixed by f, and if h has any fixed point at all, f must be
/// the identity on the grid. Vacuously passes for fixed point free h.
CheckReport reverser_fixed_point_audit(const MapExpr& h, const MapExpr& f,
                                       GridSpec grid, double tol);

struct OrderReversingReport {
  CheckReport involution_check;
  bool reversible = false;  // = involution_check.pass, by the classification
};

/// For order reversing f, reversibility in the full group is equivalent to
/// being an involution; the report simply carries that check.
OrderReversingReport classify_order_reversing(const MapExpr& f, GridSpec grid,
                                              double tol);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace revline
