#include "revline/smoothmap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "revline/bump.hpp"
#include "revline/taylor.hpp"

namespace revline {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr long kOrbitCap = 1000000;

const MapExpr& ref(const std::shared_ptr<const MapExpr>& p) { return *p; }

std::shared_ptr<const MapExpr> box(MapExpr f) {
  return std::make_shared<const MapExpr>(std::move(f));
}

double poly_eval(const FloatSeries& s, double h) {
  double acc = 0.0;
  for (int k = s.order(); k >= 1; --k) acc = acc * h + s[k];
  return acc * h;
}

TaylorPoly poly_eval(const FloatSeries& s, const TaylorPoly& h) {
  TaylorPoly acc(h.order(), 0.0);
  for (int k = s.order(); k >= 1; --k) acc = acc * h + s[k];
  return acc * h;
}

/// Bracketed hybrid solve for strictly increasing g: finds x in [lo, hi]
/// with |g(x) - y| <= tol, via secant steps safeguarded by bisection.
double solve_increasing(const std::function<double(double)>& g, double y,
                        double lo, double hi, double tol) {
  double flo = g(lo) - y, fhi = g(hi) - y;
  if (flo > 0.0 && flo <= 1e-9 * std::max(1.0, std::abs(y))) return lo;
  if (fhi < 0.0 && -fhi <= 1e-9 * std::max(1.0, std::abs(y))) return hi;
  if (flo > 0.0 || fhi < 0.0) throw MapError("inverse bracket failure");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    // secant proposal from the bracket endpoints, safeguarded
    double cand = lo - flo * (hi - lo) / (fhi - flo);
    const double width = hi - lo;
    if (!(cand > lo + 1e-3 * width && cand < hi - 1e-3 * width))
      cand = 0.5 * (lo + hi);
    const double fc = g(cand) - y;
    x = cand;
    if (std::abs(fc) <= tol) return x;
    if (fc < 0.0) {
      lo = cand;
      flo = fc;
    } else {
      hi = cand;
      fhi = fc;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(lo) + std::abs(hi)))
      return 0.5 * (lo + hi);
  }
  return x;
}

FloatSeries identity_series(int order) { return FloatSeries::identity(order); }

FloatSeries taylor_tail(const TaylorPoly& t) {
  FloatSeries s(t.order() >= 1 ? t.order() : 1);
  for (int k = 1; k <= t.order(); ++k) s[k] = t[k];
  return s;
}

TaylorPoly to_taylor(const Jet& j, int order) {
  TaylorPoly t(order, j.value);
  for (int k = 1; k <= std::min(order, j.series.order()); ++k)
    t[k] = j.series[k];
  return t;
}

JetSide flip(JetSide s) {
  if (s == JetSide::left) return JetSide::right;
  if (s == JetSide::right) return JetSide::left;
  return s;
}

double eval_jetinterp(const JetInterpNode& n, double x) {
  if (x <= n.u) return n.yu + n.ju[1] * (x - n.u);
  if (x >= n.v) return n.yv + n.jv[1] * (x - n.v);
  const double base = eval(ref(n.base), x);
  double acc = base;
  const double tu = (x - n.u) / n.delta;
  if (tu < 1.0)
    acc += bumps::cutoff(tu) * (n.yu + poly_eval(n.ju, x - n.u) - base);
  const double tv = (n.v - x) / n.delta;
  if (tv < 1.0)
    acc += bumps::cutoff(tv) * (n.yv + poly_eval(n.jv, x - n.v) - base);
  return acc;
}

// Piece index for evaluation: first piece left of b1, last right of bk.
size_t piece_index(const PiecewiseNode& n, double x) {
  return static_cast<size_t>(
      std::upper_bound(n.breakpoints.begin(), n.breakpoints.end(), x) -
      n.breakpoints.begin());
}

double hermite(double y0, double y1, double m0, double m1, double h,
               double d) {
  // cubic through (0,y0),(h,y1) with slopes m0,m1, evaluated at d
  const double c2 = (3.0 * (y1 - y0) / h - 2.0 * m0 - m1) / h;
  const double c3 = (m0 + m1 - 2.0 * (y1 - y0) / h) / (h * h);
  return y0 + d * (m0 + d * (c2 + d * c3));
}

double eval_sampled(const SampledNode& n, double x) {
  const size_t count = n.values.size();
  const double xend = n.x0 + n.dx * static_cast<double>(count - 1);
  if (x <= n.x0) return n.values.front() + n.slopes.front() * (x - n.x0);
  if (x >= xend) return n.values.back() + n.slopes.back() * (x - xend);
  const auto i = static_cast<size_t>((x - n.x0) / n.dx);
  const size_t j = std::min(i, count - 2);
  const double xi = n.x0 + n.dx * static_cast<double>(j);
  return hermite(n.values[j], n.values[j + 1], n.slopes[j], n.slopes[j + 1],
                 n.dx, x - xi);
}

}  // namespace

double eval(const MapExpr& f, double x) {
  return std::visit(
      overloaded{
          [&](const IdentityNode&) { return x; },
          [&](const AffineNode& n) { return n.slope * x + n.offset; },
          [&](const NegateNode&) { return -x; },
          [&](const BumpSeedNode& n) {
            if (x <= 0.0 || x >= 1.0) return x;
            return x + n.amplitude * bumps::amplitude_scale() *
                           bumps::bump01(x);
          },
          [&](const JetInterpNode& n) { return eval_jetinterp(n, x); },
          [&](const PiecewiseNode& n) {
            return eval(ref(n.pieces[piece_index(n, x)]), x);
          },
          [&](const PeriodicLiftNode& n) {
            const double shift =
                std::floor((x - n.u) / n.period) * n.period;
            return eval(ref(n.base), x - shift) + shift;
          },
          [&](const ComposeNode& n) {
            return eval(ref(n.outer), eval(ref(n.inner), x));
          },
          [&](const InverseNode& n) { return eval_inverse(ref(n.inner), x); },
          [&](const OrbitChartNode& n) {
            double cur = x;
            long count = 0;
            for (long guard = 0;; ++guard) {
              if (guard > kOrbitCap)
                throw MapError("orbit iteration cap exceeded");
              if (cur >= n.len) {
                cur = eval_inverse(ref(n.m), cur);
                ++count;
              } else if (cur < 0.0) {
                cur = eval(ref(n.m), cur);
                --count;
              } else {
                break;
              }
            }
            return eval(ref(n.alpha), cur) + static_cast<double>(count);
          },
          [&](const SampledNode& n) { return eval_sampled(n, x); },
      },
      f.data());
}

double eval_inverse(const MapExpr& f, double y, double tol) {
  return std::visit(
      overloaded{
          [&](const IdentityNode&) { return y; },
          [&](const AffineNode& n) { return (y - n.offset) / n.slope; },
          [&](const NegateNode&) { return -y; },
          [&](const BumpSeedNode&) {
            if (y <= 0.0 || y >= 1.0) return y;
            return solve_increasing([&](double t) { return eval(f, t); }, y,
                                    0.0, 1.0, tol);
          },
          [&](const JetInterpNode& n) {
            if (y <= n.yu) return n.u + (y - n.yu) / n.ju[1];
            if (y >= n.yv) return n.v + (y - n.yv) / n.jv[1];
            return solve_increasing([&](double t) { return eval(f, t); }, y,
                                    n.u, n.v, tol);
          },
          [&](const PiecewiseNode& n) {
            const size_t k = n.breakpoints.size();
            const bool incr =
                orientation(f) == Orientation::preserving;
            size_t idx = 0;
            while (idx < k) {
              const double vb = eval(ref(n.pieces[idx]), n.breakpoints[idx]);
              if (incr ? (y < vb) : (y > vb)) break;
              ++idx;
            }
            return eval_inverse(ref(n.pieces[idx]), y, tol);
          },
          [&](const PeriodicLiftNode& n) {
            const double base_u = eval(ref(n.base), n.u);
            const double shift =
                std::floor((y - base_u) / n.period) * n.period;
            return eval_inverse(ref(n.base), y - shift, tol) + shift;
          },
          [&](const ComposeNode& n) {
            return eval_inverse(ref(n.inner),
                                eval_inverse(ref(n.outer), y, tol), tol);
          },
          [&](const InverseNode& n) { return eval(ref(n.inner), y); },
          [&](const OrbitChartNode& n) {
            const double nf = std::floor(y);
            if (std::abs(nf) > static_cast<double>(kOrbitCap))
              throw MapError("orbit iteration cap exceeded");
            double x = eval_inverse(ref(n.alpha), y - nf, tol);
            long count = static_cast<long>(nf);
            for (; count > 0; --count) x = eval(ref(n.m), x);
            for (; count < 0; ++count) x = eval_inverse(ref(n.m), x, tol);
            return x;
          },
          [&](const SampledNode& n) {
            const size_t count = n.values.size();
            const double xend =
                n.x0 + n.dx * static_cast<double>(count - 1);
            if (y <= n.values.front())
              return n.x0 + (y - n.values.front()) / n.slopes.front();
            if (y >= n.values.back())
              return xend + (y - n.values.back()) / n.slopes.back();
            const auto it =
                std::upper_bound(n.values.begin(), n.values.end(), y);
            const size_t j =
                static_cast<size_t>(it - n.values.begin()) - 1;
            const double xi = n.x0 + n.dx * static_cast<double>(j);
            return solve_increasing([&](double t) { return eval(f, t); }, y,
                                    xi, xi + n.dx, tol);
          },
      },
      f.data());
}

namespace {

Jet jet_bump(const BumpSeedNode& n, double a, int order) {
  if (a <= 0.0 || a >= 1.0) return Jet{a, a, identity_series(order)};
  TaylorPoly x = TaylorPoly::variable(order, a);
  TaylorPoly out =
      x + (n.amplitude * bumps::amplitude_scale()) * bumps::bump01(x);
  return Jet{a, out.value(), taylor_tail(out)};
}

Jet jet_jetinterp(const MapExpr& f, const JetInterpNode& n, double a,
                  int order, JetSide side) {
  auto tail = [&](double y0, const FloatSeries& j, double at) {
    FloatSeries s(order);
    s[1] = j[1];
    return Jet{a, y0 + j[1] * (a - at), s};
  };
  if (a < n.u) return tail(n.yu, n.ju, n.u);
  if (a > n.v) return tail(n.yv, n.jv, n.v);
  if (a == n.u && side != JetSide::left)
    return Jet{a, n.yu, resized(n.ju, order)};
  if (a == n.u) return tail(n.yu, n.ju, n.u);
  if (a == n.v && side != JetSide::right)
    return Jet{a, n.yv, resized(n.jv, order)};
  if (a == n.v) return tail(n.yv, n.jv, n.v);

  const Jet base = jet_at(ref(n.base), a, order, side);
  const TaylorPoly bt = to_taylor(base, order);
  TaylorPoly x = TaylorPoly::variable(order, a);
  TaylorPoly acc = bt;
  const TaylorPoly cu = bumps::cutoff((x - n.u) / n.delta);
  if (cu.value() > 0.0) acc = acc + cu * (poly_eval(n.ju, x - n.u) + n.yu - bt);
  const TaylorPoly cv = bumps::cutoff((n.v - x) / n.delta);
  if (cv.value() > 0.0) acc = acc + cv * (poly_eval(n.jv, x - n.v) + n.yv - bt);
  return Jet{a, acc.value(), taylor_tail(acc)};
}

Jet jet_sampled(const SampledNode& n, double a, int order, JetSide side) {
  const size_t count = n.values.size();
  const double xend = n.x0 + n.dx * static_cast<double>(count - 1);
  FloatSeries s(order);
  if (a <= n.x0 && !(a == n.x0 && side == JetSide::right)) {
    s[1] = n.slopes.front();
    return Jet{a, n.values.front() + n.slopes.front() * (a - n.x0), s};
  }
  if (a >= xend && !(a == xend && side == JetSide::left)) {
    s[1] = n.slopes.back();
    return Jet{a, n.values.back() + n.slopes.back() * (a - xend), s};
  }
  size_t j = static_cast<size_t>((a - n.x0) / n.dx);
  j = std::min(j, count - 2);
  if (side == JetSide::left && a == n.x0 + n.dx * static_cast<double>(j) &&
      j > 0)
    --j;
  const double xi = n.x0 + n.dx * static_cast<double>(j);
  const double h = n.dx, y0 = n.values[j], y1 = n.values[j + 1];
  const double m0 = n.slopes[j], m1 = n.slopes[j + 1];
  const double c2 = (3.0 * (y1 - y0) / h - 2.0 * m0 - m1) / h;
  const double c3 = (m0 + m1 - 2.0 * (y1 - y0) / h) / (h * h);
  const double d = a - xi;
  const double value = y0 + d * (m0 + d * (c2 + d * c3));
  s[1] = m0 + d * (2.0 * c2 + 3.0 * d * c3);
  if (order >= 2) s[2] = c2 + 3.0 * c3 * d;
  if (order >= 3) s[3] = c3;
  return Jet{a, value, s};
}

}  // namespace

Jet jet_at(const MapExpr& f, double a, int order, JetSide side) {
  return std::visit(
      overloaded{
          [&](const IdentityNode&) {
            return Jet{a, a, identity_series(order)};
          },
          [&](const AffineNode& n) {
            FloatSeries s(order);
            s[1] = n.slope;
            return Jet{a, n.slope * a + n.offset, s};
          },
          [&](const NegateNode&) {
            FloatSeries s(order);
            s[1] = -1.0;
            return Jet{a, -a, s};
          },
          [&](const BumpSeedNode& n) { return jet_bump(n, a, order); },
          [&](const JetInterpNode& n) {
            return jet_jetinterp(f, n, a, order, side);
          },
          [&](const PiecewiseNode& n) {
            const auto lb = std::lower_bound(n.breakpoints.begin(),
                                             n.breakpoints.end(), a);
            if (lb != n.breakpoints.end() && *lb == a) {
              const size_t i =
                  static_cast<size_t>(lb - n.breakpoints.begin());
              if (side == JetSide::left)
                return jet_at(ref(n.pieces[i]), a, order, JetSide::left);
              if (side == JetSide::right)
                return jet_at(ref(n.pieces[i + 1]), a, order, JetSide::right);
              if (!n.joint_jets.empty())
                return Jet{a, eval(ref(n.pieces[i]), a),
                           resized(n.joint_jets[i], order)};
              throw MapError("jet at a glue joint requires a side selection");
            }
            return jet_at(ref(n.pieces[piece_index(n, a)]), a, order, side);
          },
          [&](const PeriodicLiftNode& n) {
            const double shift =
                std::floor((a - n.u) / n.period) * n.period;
            Jet j = jet_at(ref(n.base), a - shift, order, side);
            return Jet{a, j.value + shift, j.series};
          },
          [&](const ComposeNode& n) {
            const Jet ji = jet_at(ref(n.inner), a, order, side);
            const JetSide outer_side =
                orientation(ref(n.inner)) == Orientation::preserving
                    ? side
                    : flip(side);
            const Jet jo = jet_at(ref(n.outer), ji.value, order, outer_side);
            return Jet{a, jo.value, compose(jo.series, ji.series)};
          },
          [&](const InverseNode& n) {
            const JetSide inner_side =
                orientation(ref(n.inner)) == Orientation::preserving
                    ? side
                    : flip(side);
            const double x = eval_inverse(ref(n.inner), a);
            const Jet j = jet_at(ref(n.inner), x, order, inner_side);
            return Jet{a, x, invert(j.series)};
          },
          [&](const OrbitChartNode& n) {
            double cur = a;
            long count = 0;
            FloatSeries chain = identity_series(order);
            const MapExpr inv_m = inverse(ref(n.m));
            for (long guard = 0;; ++guard) {
              if (guard > kOrbitCap)
                throw MapError("orbit iteration cap exceeded");
              if (cur >= n.len) {
                const Jet step = jet_at(inv_m, cur, order, side);
                chain = compose(step.series, chain);
                cur = step.value;
                ++count;
              } else if (cur < 0.0) {
                const Jet step = jet_at(ref(n.m), cur, order, side);
                chain = compose(step.series, chain);
                cur = step.value;
                --count;
              } else {
                break;
              }
            }
            const Jet ja = jet_at(ref(n.alpha), cur, order, side);
            return Jet{a, ja.value + static_cast<double>(count),
                       compose(ja.series, chain)};
          },
          [&](const SampledNode& n) {
            return jet_sampled(n, a, order, side);
          },
      },
      f.data());
}

double derivative(const MapExpr& f, double x, int k, int order) {
  if (k < 1 || k > order)
    throw std::invalid_argument("derivative order outside jet range");
  const Jet j = jet_at(f, x, order);
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return j.series[k] * fact;
}

Orientation orientation(const MapExpr& f) {
  return std::visit(
      overloaded{
          [&](const IdentityNode&) { return Orientation::preserving; },
          [&](const AffineNode& n) {
            return n.slope < 0.0 ? Orientation::reversing
                                 : Orientation::preserving;
          },
          [&](const NegateNode&) { return Orientation::reversing; },
          [&](const BumpSeedNode&) { return Orientation::preserving; },
          [&](const JetInterpNode&) { return Orientation::preserving; },
          [&](const PiecewiseNode& n) { return orientation(ref(n.pieces[0])); },
          [&](const PeriodicLiftNode&) { return Orientation::preserving; },
          [&](const ComposeNode& n) {
            return orientation(ref(n.outer)) == orientation(ref(n.inner))
                       ? Orientation::preserving
                       : Orientation::reversing;
          },
          [&](const InverseNode& n) { return orientation(ref(n.inner)); },
          [&](const OrbitChartNode&) { return Orientation::preserving; },
          [&](const SampledNode&) { return Orientation::preserving; },
      },
      f.data());
}

FixedPointScan fixed_points(const MapExpr& f, double a, double b, int grid) {
  if (!(a < b) || grid < 2)
    throw std::invalid_argument("fixed_points needs a < b and grid >= 2");
  const double flat_tol = 1e-12;
  FixedPointScan out;
  std::vector<double> xs(static_cast<size_t>(grid));
  std::vector<double> ds(static_cast<size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const double x = a + (b - a) * i / (grid - 1);
    xs[static_cast<size_t>(i)] = x;
    ds[static_cast<size_t>(i)] = eval(f, x) - x;
  }
  auto push_point = [&](double x) {
    if (out.points.empty() ||
        std::abs(out.points.back() - x) > 1e-9 * std::max(1.0, std::abs(x)))
      out.points.push_back(x);
  };
  size_t i = 0;
  while (i < xs.size()) {
    if (std::abs(ds[i]) <= flat_tol) {
      size_t j = i;
      while (j + 1 < xs.size() && std::abs(ds[j + 1]) <= flat_tol) ++j;
      if (j > i)
        out.intervals.emplace_back(xs[i], xs[j]);
      else
        push_point(xs[i]);
      i = j + 1;
      continue;
    }
    if (i + 1 < xs.size() && std::abs(ds[i + 1]) > flat_tol &&
        ds[i] * ds[i + 1] < 0.0) {
      double lo = xs[i], hi = xs[i + 1];
      double dlo = ds[i];
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = eval(f, mid) - mid;
        if (dm == 0.0 || hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) {
          lo = hi = mid;
          break;
        }
        if ((dlo < 0.0) == (dm < 0.0)) {
          lo = mid;
          dlo = dm;
        } else {
          hi = mid;
        }
      }
      push_point(0.5 * (lo + hi));
    }
    ++i;
  }
  return out;
}

bool is_fixed_point_free(const MapExpr& f, double a, double b, int grid) {
  return fixed_points(f, a, b, grid).empty();
}

double min_displacement(const MapExpr& f, double a, double b, int grid) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double x = a + (b - a) * i / (grid - 1);
    best = std::min(best, eval(f, x) - x);
  }
  return best;
}

double joint_jet_gap(const MapExpr& f, int order) {
  return std::visit(
      overloaded{
          [&](const PiecewiseNode& n) {
            double worst = 0.0;
            for (size_t i = 0; i < n.breakpoints.size(); ++i) {
              const double b = n.breakpoints[i];
              const Jet jl = jet_at(ref(n.pieces[i]), b, order, JetSide::left);
              const Jet jr =
                  jet_at(ref(n.pieces[i + 1]), b, order, JetSide::right);
              worst = std::max(worst, std::abs(jl.value - jr.value));
              worst = std::max(worst, max_coeff_diff(jl.series, jr.series));
            }
            for (const auto& p : n.pieces)
              worst = std::max(worst, joint_jet_gap(ref(p), order));
            return worst;
          },
          [&](const PeriodicLiftNode& n) {
            const Jet jl =
                jet_at(ref(n.base), n.u + n.period, order, JetSide::left);
            const Jet jr = jet_at(ref(n.base), n.u, order, JetSide::right);
            double worst = std::abs((jl.value - n.period) - jr.value);
            worst = std::max(worst, max_coeff_diff(jl.series, jr.series));
            return std::max(worst, joint_jet_gap(ref(n.base), order));
          },
          [&](const ComposeNode& n) {
            return std::max(joint_jet_gap(ref(n.outer), order),
                            joint_jet_gap(ref(n.inner), order));
          },
          [&](const InverseNode& n) {
            return joint_jet_gap(ref(n.inner), order);
          },
          [&](const JetInterpNode& n) {
            return joint_jet_gap(ref(n.base), order);
          },
          [&](const auto&) { return 0.0; },
      },
      f.data());
}

// ---------------------------------------------------------------------------
// Factories

MapExpr identity_map() { return MapExpr(IdentityNode{}); }

MapExpr affine(double slope, double offset) {
  if (slope == 0.0 || !std::isfinite(slope) || !std::isfinite(offset))
    throw std::invalid_argument("affine map needs a finite nonzero slope");
  if (slope == 1.0 && offset == 0.0) return identity_map();
  return MapExpr(AffineNode{slope, offset});
}

MapExpr translate(double offset) {
  if (offset == 0.0) return identity_map();
  return MapExpr(AffineNode{1.0, offset});
}

MapExpr negate_map() { return MapExpr(NegateNode{}); }

MapExpr bump_seed(double amplitude) {
  if (!(std::abs(amplitude) < 1.0))
    throw std::invalid_argument("bump amplitude must satisfy |s| < 1");
  if (amplitude == 0.0) return identity_map();
  return MapExpr(BumpSeedNode{amplitude});
}

MapExpr compose(MapExpr outer, MapExpr inner) {
  if (outer.get_if<IdentityNode>()) return inner;
  if (inner.get_if<IdentityNode>()) return outer;
  if (outer.get_if<NegateNode>() && inner.get_if<NegateNode>())
    return identity_map();
  const auto* ao = outer.get_if<AffineNode>();
  const auto* ai = inner.get_if<AffineNode>();
  if (ao && ai)
    return affine(ao->slope * ai->slope,
                  ao->slope * ai->offset + ao->offset);
  if (outer.get_if<NegateNode>() && ai)
    return affine(-ai->slope, -ai->offset);
  if (ao && inner.get_if<NegateNode>()) return affine(-ao->slope, ao->offset);
  return MapExpr(ComposeNode{box(std::move(outer)), box(std::move(inner))});
}

MapExpr inverse(MapExpr f) {
  if (f.get_if<IdentityNode>() || f.get_if<NegateNode>()) return f;
  if (const auto* a = f.get_if<AffineNode>())
    return affine(1.0 / a->slope, -a->offset / a->slope);
  if (const auto* inv = f.get_if<InverseNode>()) return ref(inv->inner);
  return MapExpr(InverseNode{box(std::move(f))});
}

MapExpr piecewise(std::vector<double> breakpoints, std::vector<MapExpr> pieces,
                  std::vector<FloatSeries> joint_jets) {
  if (pieces.size() != breakpoints.size() + 1)
    throw std::invalid_argument("piecewise needs k breakpoints, k+1 pieces");
  if (!joint_jets.empty() && joint_jets.size() != breakpoints.size())
    throw std::invalid_argument("one declared jet per breakpoint");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw std::invalid_argument("breakpoints must increase");
  const Orientation o = orientation(pieces[0]);
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    const double b = breakpoints[i];
    const double l = eval(pieces[i], b), r = eval(pieces[i + 1], b);
    if (std::abs(l - r) > 1e-9 * std::max(1.0, std::abs(l)))
      throw ConstructionError("piecewise glue is discontinuous at " +
                              std::to_string(b));
    if (orientation(pieces[i + 1]) != o)
      throw ConstructionError("piecewise glue mixes orientations");
  }
  std::vector<std::shared_ptr<const MapExpr>> boxed;
  boxed.reserve(pieces.size());
  for (auto& p : pieces) boxed.push_back(box(std::move(p)));
  return MapExpr(PiecewiseNode{std::move(breakpoints), std::move(boxed),
                               std::move(joint_jets)});
}

MapExpr periodic_lift(double u, double period, MapExpr base) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");
  const double lo = eval(base, u), hi = eval(base, u + period);
  if (std::abs(hi - lo - period) > 1e-9 * std::max(1.0, std::abs(hi)))
    throw ConstructionError("lift base does not advance by one period");
  return MapExpr(PeriodicLiftNode{u, period, box(std::move(base))});
}

MapExpr orbit_chart(MapExpr alpha, MapExpr m, double len) {
  if (!(len > 0.0)) throw std::invalid_argument("orbit chart needs len > 0");
  if (std::abs(eval(alpha, 0.0)) > 1e-9 ||
      std::abs(eval(alpha, len) - 1.0) > 1e-9)
    throw ConstructionError("orbit chart must map [0, len] onto [0, 1]");
  if (std::abs(eval(m, 0.0) - len) > 1e-9)
    throw ConstructionError("orbit chart domain must be [0, m(0)]");
  return MapExpr(
      OrbitChartNode{box(std::move(alpha)), box(std::move(m)), len});
}

MapExpr sampled_monotone(double x0, double dx, std::vector<double> values) {
  if (values.size() < 2 || !(dx > 0.0))
    throw std::invalid_argument("sampled map needs dx > 0 and >= 2 samples");
  for (size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw ConstructionError("sampled map values must strictly increase");
  const size_t n = values.size();
  std::vector<double> secants(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) secants[i] = (values[i + 1] - values[i]) / dx;
  std::vector<double> slopes(n);
  slopes.front() = secants.front();
  slopes.back() = secants.back();
  for (size_t i = 1; i + 1 < n; ++i)
    slopes[i] = 0.5 * (secants[i - 1] + secants[i]);
  // Fritsch-Carlson limiting keeps the cubic monotone on every interval.
  for (size_t i = 0; i + 1 < n; ++i) {
    const double al = slopes[i] / secants[i], be = slopes[i + 1] / secants[i];
    const double r = al * al + be * be;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slopes[i] = tau * al * secants[i];
      slopes[i + 1] = tau * be * secants[i];
    }
  }
  return MapExpr(SampledNode{x0, dx, std::move(values), std::move(slopes)});
}

MapExpr make_jet_interp(double u, double v, double yu, double yv,
                        FloatSeries ju, FloatSeries jv, double delta) {
  if (!(u < v) || !(yu < yv))
    throw ConstructionError("jet interpolation needs u < v and yu < yv");
  if (!(ju[1] > 0.0) || !(jv[1] > 0.0))
    throw ConstructionError("jet interpolation needs positive jet leads");
  const MapExpr base = affine((yv - yu) / (v - u), yu - (yv - yu) / (v - u) * u);
  double d = std::min(delta, 0.5 * (v - u));
  for (int attempt = 0; attempt <= 20; ++attempt, d *= 0.5) {
    MapExpr cand(JetInterpNode{u, v, yu, yv, ju, jv, d, box(base)});
    // monotone on a uniform grid plus dense windows around the cutoffs
    bool ok = true;
    auto scan = [&](double lo, double hi, int pts) {
      double prev = eval(cand, lo);
      for (int i = 1; i < pts && ok; ++i) {
        const double x = lo + (hi - lo) * i / (pts - 1);
        const double y = eval(cand, x);
        if (!(y > prev)) ok = false;
        prev = y;
      }
    };
    scan(u, v, 2001);
    if (ok) scan(u, std::min(v, u + d), 513);
    if (ok) scan(std::max(u, v - d), v, 513);
    if (ok) return cand;
  }
  throw ConstructionError(
      "jet interpolation infeasible: not monotone for any cutoff radius");
}

}  // namespace revline
