#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "revline/series.hpp"

namespace revline {

namespace config {
inline constexpr int smoothness_order = 8;  // K: order carried by jets
inline constexpr double jet_tolerance = 1e-7;
inline constexpr double inverse_tol = 1e-12;
inline constexpr int grid_points = 2001;
inline constexpr int series_order = 16;  // default N for exact series work
}  // namespace config

struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a builder cannot realize its contract (infeasible
/// interpolation, failed domination, exhausted retries, ...).
struct ConstructionError : MapError {
  using MapError::MapError;
};

enum class Orientation { preserving, reversing };

enum class JetSide { automatic, left, right };

/// Truncated Taylor data of a map at a point: f(base) and the series
/// sum f^(k)(base)/k! X^k without constant term, in float mode.
struct Jet {
  double base = 0.0;
  double value = 0.0;
  FloatSeries series;
};

class MapExpr;

struct IdentityNode {};

struct AffineNode {
  double slope;
  double offset;
};

struct NegateNode {};

/// x + s * s_max * B(x) on [0,1], identity outside; B is the max-1
/// normalized flat bump and s_max the stored critical amplitude, so any
/// |s| < 1 gives a diffeomorphism with identity jets at 0 and 1.
struct BumpSeedNode {
  double amplitude;
};

/// Monotone interpolant on [u,v] with prescribed one-sided jets at the
/// endpoints: base carrier plus flat-cutoff polynomial corrections supported
/// within delta of each end. Affine continuation (slope = jet lead) outside.
struct JetInterpNode {
  double u, v;
  double yu, yv;
  FloatSeries ju, jv;
  double delta;
  std::shared_ptr<const MapExpr> base;
};

struct PiecewiseNode {
  std::vector<double> breakpoints;  // b1 < ... < bk
  std::vector<std::shared_ptr<const MapExpr>> pieces;  // k+1 pieces
  std::vector<FloatSeries> joint_jets;  // declared jets at breakpoints, may be empty
};

/// f(x + period) = f(x) + period, with f given by base on [u, u + period].
struct PeriodicLiftNode {
  double u;
  double period;
  std::shared_ptr<const MapExpr> base;
};

struct ComposeNode {
  std::shared_ptr<const MapExpr> outer, inner;
};

struct InverseNode {
  std::shared_ptr<const MapExpr> inner;
};

/// Conjugator of a fixed point free ascending map m to x -> x+1, stitched
/// from the chart alpha: [0, len] -> [0, 1] by k(m^n(x)) = alpha(x) + n.
struct OrbitChartNode {
  std::shared_ptr<const MapExpr> alpha;
  std::shared_ptr<const MapExpr> m;
  double len;  // m(0)
};

/// Monotone cubic (Fritsch-Carlson) through uniform samples, continued
/// affinely with the end slopes outside the window.
struct SampledNode {
  double x0, dx;
  std::vector<double> values;
  std::vector<double> slopes;  // knot derivatives, filled at construction
};

using NodeData =
    std::variant<IdentityNode, AffineNode, NegateNode, BumpSeedNode,
                 JetInterpNode, PiecewiseNode, PeriodicLiftNode, ComposeNode,
                 InverseNode, OrbitChartNode, SampledNode>;

/// Expression tree denoting a smooth strictly monotone bijection of the
/// real line with tame tails (affine or periodic-lift behaviour outside a
/// bounded core). Values are immutable handles; copies are cheap.
class MapExpr {
 public:
  MapExpr() : node_(std::make_shared<const NodeData>(IdentityNode{})) {}
  explicit MapExpr(NodeData data)
      : node_(std::make_shared<const NodeData>(std::move(data))) {}

  const NodeData& data() const { return *node_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(node_.get());
  }

 private:
  std::shared_ptr<const NodeData> node_;
};

// Factories. compose/inverse simplify trivial shapes (identity elision,
// inverse of inverse, affine algebra) to keep evaluation depth down.
MapExpr identity_map();
MapExpr affine(double slope, double offset);
MapExpr translate(double offset);
MapExpr negate_map();
MapExpr bump_seed(double amplitude);
MapExpr compose(MapExpr outer, MapExpr inner);
MapExpr inverse(MapExpr f);
MapExpr piecewise(std::vector<double> breakpoints, std::vector<MapExpr> pieces,
                  std::vector<FloatSeries> joint_jets = {});
MapExpr periodic_lift(double u, double period, MapExpr base);
MapExpr orbit_chart(MapExpr alpha, MapExpr m, double len);
MapExpr sampled_monotone(double x0, double dx, std::vector<double> values);

/// Builds the jet-matching interpolant on [u,v]; validates monotone
/// feasibility on a dense grid and halves delta up to 20 times before
/// giving up with ConstructionError. Jets must have positive lead.
MapExpr make_jet_interp(double u, double v, double yu, double yv,
                        FloatSeries ju, FloatSeries jv, double delta);

double eval(const MapExpr& f, double x);
double eval_inverse(const MapExpr& f, double y,
                    double tol = config::inverse_tol);

Jet jet_at(const MapExpr& f, double a, int order = config::smoothness_order,
           JetSide side = JetSide::automatic);

/// k-th derivative at x read from the jet (1 <= k <= order).
double derivative(const MapExpr& f, double x, int k,
                  int order = config::smoothness_order);

Orientation orientation(const MapExpr& f);

struct FixedPointScan {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;  // flat stretches
  bool empty() const { return points.empty() && intervals.empty(); }
};

/// Sign changes of f(x) - x on the grid, refined by bisection; runs of
/// grid points with f(x) == x (to tolerance) are reported as intervals.
FixedPointScan fixed_points(const MapExpr& f, double a, double b, int grid);

bool is_fixed_point_free(const MapExpr& f, double a, double b, int grid);

/// min over the grid of f(x) - x (displacement), for orbit feasibility checks.
double min_displacement(const MapExpr& f, double a, double b, int grid);

/// Largest coefficient gap between left and right jets across all declared
/// breakpoints of a piecewise glue (0 for other nodes).
double joint_jet_gap(const MapExpr& f, int order = config::smoothness_order);

}  // namespace revline
