#include "revline/verify.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace revline {

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2 || !(lo < hi))
    throw std::invalid_argument("grid needs lo < hi and >= 2 points");
  std::vector<double> xs(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i)
    xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return xs;
}

namespace {

CheckReport sup_check(std::string name, GridSpec grid, double tol,
                      const std::function<double(double)>& err) {
  CheckReport r;
  r.name = std::move(name);
  r.grid = grid;
  r.tol = tol;
  r.worst_x = grid.lo;
  for (double x : linspace(grid.lo, grid.hi, grid.points)) {
    const double e = std::abs(err(x));
    if (e > r.sup_error) {  // strict: leftmost worst point wins ties
      r.sup_error = e;
      r.worst_x = x;
    }
  }
  r.pass = r.sup_error <= tol;
  return r;
}

}  // namespace

CheckReport check_reverses(const MapExpr& h, const MapExpr& f, GridSpec grid,
                           double tol) {
  return sup_check("reverses", grid, tol, [&](double x) {
    return eval(h, eval(f, x)) - eval_inverse(f, eval(h, x));
  });
}

CheckReport check_involution(const MapExpr& tau, GridSpec grid, double tol) {
  return sup_check("involution", grid, tol,
                   [&](double x) { return eval(tau, eval(tau, x)) - x; });
}

CheckReport check_conjugation(const MapExpr& k, const MapExpr& f,
                              const MapExpr& g, GridSpec grid, double tol) {
  return sup_check("conjugation", grid, tol, [&](double x) {
    return eval(k, eval(f, x)) - eval(g, eval(k, x));
  });
}

CheckReport check_wave(const MapExpr& f, GridSpec grid, double tol) {
  return sup_check("wave", grid, tol, [&](double x) {
    return eval(f, x + 1.0) - (eval_inverse(f, x) + 1.0);
  });
}

CheckReport check_commutation(const MapExpr& f, double p, GridSpec grid,
                              double tol) {
  return sup_check("commutation", grid, tol, [&](double x) {
    return eval(f, x + p) - (eval(f, x) + p);
  });
}

CheckReport reverser_fixed_point_audit(const MapExpr& h, const MapExpr& f,
                                       GridSpec grid, double tol) {
  CheckReport r;
  r.name = "reverser-fixed-point-audit";
  r.grid = grid;
  r.tol = tol;
  r.worst_x = grid.lo;

  const FixedPointScan fixed = fixed_points(h, grid.lo, grid.hi, grid.points);
  std::vector<double> probes = fixed.points;
  for (const auto& [a, b] : fixed.intervals) {
    probes.push_back(a);
    probes.push_back(0.5 * (a + b));
    probes.push_back(b);
  }
  for (double p : probes) {
    const double e = std::abs(eval(f, p) - p);
    if (e > r.sup_error) {
      r.sup_error = e;
      r.worst_x = p;
    }
  }
  if (!probes.empty()) {
    // h has a fixed point, so f must be the identity everywhere.
    for (double x : linspace(grid.lo, grid.hi, grid.points)) {
      const double e = std::abs(eval(f, x) - x);
      if (e > r.sup_error) {
        r.sup_error = e;
        r.worst_x = x;
      }
    }
  }
  r.pass = r.sup_error <= tol;
  return r;
}

OrderReversingReport classify_order_reversing(const MapExpr& f, GridSpec grid,
                                              double tol) {
  if (orientation(f) != Orientation::reversing)
    throw std::invalid_argument(
        "classification applies to order reversing maps");
  OrderReversingReport out;
  out.involution_check = check_involution(f, grid, tol);
  out.reversible = out.involution_check.pass;
  return out;
}

}  // namespace revline
