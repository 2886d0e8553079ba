#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "revline/rational.hpp"

namespace revline {

/// Truncated formal power series a1*X + a2*X^2 + ... + aN*X^N, no constant
/// term; every operation discards terms above X^N. The coefficient type is
/// either Rational (exact mode) or double (float mode); a value never mixes
/// the two. Series with a1 != 0 form a group under truncated composition.
///
/// Values are immutable in spirit: operations return new series.
template <typename C>
class Series {
 public:
  Series() : c_(1, C(0)) {}
  explicit Series(int order) : c_(checked(order), C(0)) {}
  Series(std::vector<C> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("series order must be >= 1");
  }

  /// The identity X of the composition group.
  static Series identity(int order) {
    Series s(order);
    s.c_[0] = C(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()); }

  /// Coefficient of X^k (1-based degree).
  const C& operator[](int k) const { return c_[static_cast<size_t>(k) - 1]; }
  C& operator[](int k) { return c_[static_cast<size_t>(k) - 1]; }

  const std::vector<C>& coeffs() const { return c_; }

  friend bool operator==(const Series& a, const Series& b) {
    return a.c_ == b.c_;
  }

 private:
  static int checked(int order) {
    if (order < 1) throw std::invalid_argument("series order must be >= 1");
    return order;
  }
  std::vector<C> c_;
};

using RationalSeries = Series<Rational>;
using FloatSeries = Series<double>;

template <typename C>
constexpr bool series_is_float_mode = std::is_floating_point_v<C>;

/// Comparison slack used by predicates: exact mode compares with zero
/// tolerance, float mode within |.| <= tol.
template <typename C>
constexpr double default_series_tol() {
  if constexpr (series_is_float_mode<C>) {
    return 1e-9;
  } else {
    return 0.0;
  }
}

template <typename C>
bool coeff_near_zero(const C& x, double tol) {
  if constexpr (series_is_float_mode<C>) {
    return std::abs(x) <= tol;
  } else {
    (void)tol;
    return x == C(0);
  }
}

template <typename C>
bool series_near_equal(const Series<C>& a, const Series<C>& b,
                       double tol = default_series_tol<C>()) {
  if (a.order() != b.order()) return false;
  for (int k = 1; k <= a.order(); ++k) {
    if (!coeff_near_zero<C>(a[k] - b[k], tol)) return false;
  }
  return true;
}

/// Zero-pads or truncates to the requested order.
template <typename C>
Series<C> resized(const Series<C>& s, int order) {
  Series<C> out(order);
  for (int k = 1; k <= std::min(order, s.order()); ++k) out[k] = s[k];
  return out;
}

template <typename C>
Series<C> add(const Series<C>& a, const Series<C>& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch");
  Series<C> out(a.order());
  for (int k = 1; k <= a.order(); ++k) out[k] = a[k] + b[k];
  return out;
}

template <typename C>
Series<C> sub(const Series<C>& a, const Series<C>& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch");
  Series<C> out(a.order());
  for (int k = 1; k <= a.order(); ++k) out[k] = a[k] - b[k];
  return out;
}

template <typename C>
Series<C> scaled(const C& c, const Series<C>& s) {
  Series<C> out(s.order());
  for (int k = 1; k <= s.order(); ++k) out[k] = c * s[k];
  return out;
}

template <typename C>
Series<C> negated(const Series<C>& s) {
  return scaled(C(-1), s);
}

/// Truncated product (both factors vanish at 0, so degrees add from 2 up).
template <typename C>
Series<C> mul(const Series<C>& a, const Series<C>& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch");
  const int n = a.order();
  Series<C> out(n);
  for (int i = 1; i < n; ++i) {
    if (a[i] == C(0)) continue;
    for (int j = 1; i + j <= n; ++j) {
      if (b[j] == C(0)) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

/// Formal composition S(T(X)) truncated at the common order.
template <typename C>
Series<C> compose(const Series<C>& s, const Series<C>& t) {
  if (s.order() != t.order())
    throw std::invalid_argument("series order mismatch");
  const int n = s.order();
  Series<C> out(n);
  Series<C> tpow = t;  // t^k
  for (int k = 1; k <= n; ++k) {
    if (s[k] != C(0)) {
      for (int d = k; d <= n; ++d) out[d] += s[k] * tpow[d];
    }
    if (k < n) tpow = mul(tpow, t);
  }
  return out;
}

template <typename C>
bool is_formally_invertible(const Series<C>& s) {
  return s[1] != C(0);
}

/// Leading coefficient a1 (the multiplier).
template <typename C>
C multiplier(const Series<C>& s) {
  return s[1];
}

/// Compositional inverse, solved order by order; compose(s, invert(s)) == X
/// exactly in exact mode. Throws std::domain_error when a1 == 0.
template <typename C>
Series<C> invert(const Series<C>& s) {
  if (!is_formally_invertible(s))
    throw std::domain_error("series is not formally invertible (a1 == 0)");
  const int n = s.order();
  Series<C> t(n);
  t[1] = C(1) / s[1];
  for (int m = 2; m <= n; ++m) {
    // Residual of s(t(X)) - X at order m is linear in t_m with slope a1.
    Series<C> r = compose(s, t);
    t[m] -= r[m] / s[1];
  }
  return t;
}

/// u o s o u^-1.
template <typename C>
Series<C> conjugate(const Series<C>& u, const Series<C>& s) {
  return compose(compose(u, s), invert(u));
}

/// Least p >= 2 with a_p != 0, or nullopt when S is the identity to its
/// order. Requires multiplier 1.
template <typename C>
std::optional<int> lowest_order(const Series<C>& s,
                                double tol = default_series_tol<C>()) {
  if (!coeff_near_zero<C>(s[1] - C(1), tol))
    throw std::domain_error("lowest_order requires multiplier 1");
  for (int k = 2; k <= s.order(); ++k) {
    if (!coeff_near_zero<C>(s[k], tol)) return k;
  }
  return std::nullopt;
}

template <typename C>
bool is_involution(const Series<C>& s,
                   double tol = default_series_tol<C>()) {
  if (!is_formally_invertible(s))
    throw std::domain_error("series is not formally invertible (a1 == 0)");
  return series_near_equal(compose(s, s), Series<C>::identity(s.order()), tol);
}

/// True iff T o S o T^-1 == S^-1 to the common order.
template <typename C>
bool is_reversed_by(const Series<C>& t, const Series<C>& s,
                    double tol = default_series_tol<C>()) {
  return series_near_equal(conjugate(t, s), invert(s), tol);
}

struct ReverserObstruction {
  int order;  // X-power whose coefficient equation is inconsistent
};

template <typename C>
struct ReverserSolve {
  std::optional<Series<C>> reverser;
  std::optional<ReverserObstruction> obstruction;
  bool found() const { return reverser.has_value(); }
};

/// Order-by-order linear solve for T = lead*X + t2*X^2 + ... with
/// T o S = S^-1 o T at the given order. Underdetermined coefficients are
/// resolved to 0, so the output is deterministic. On failure the report
/// carries the first order whose coefficient equation is inconsistent.
///
/// At each order the residual is probed against the highest still-free
/// coefficient; the dependence on that coefficient is affine (verified by a
/// second difference), so one division pins it. A full residual check at the
/// end guarantees that a returned series satisfies the relation exactly.
template <typename C>
ReverserSolve<C> solve_reverser(const Series<C>& s_in, const C& lead,
                                int order) {
  constexpr double tol = series_is_float_mode<C> ? 1e-12 : 0.0;
  if (coeff_near_zero<C>(lead, tol))
    throw std::invalid_argument("solve_reverser requires a nonzero lead");
  const Series<C> s = resized(s_in, order);
  if (!is_formally_invertible(s))
    throw std::domain_error("series is not formally invertible (a1 == 0)");
  const Series<C> sinv = invert(s);

  Series<C> t(order);
  t[1] = lead;
  std::vector<char> undetermined(static_cast<size_t>(order) + 1, 1);
  undetermined[1] = 0;

  auto residual = [&]() { return sub(compose(t, s), compose(sinv, t)); };

  for (int n = 1; n <= order; ++n) {
    Series<C> r = residual();
    if (coeff_near_zero<C>(r[n], tol)) continue;
    bool solved = false;
    for (int m = n; m >= 2; --m) {
      if (!undetermined[static_cast<size_t>(m)]) continue;
      const C saved = t[m];
      t[m] = saved + C(1);
      const C r1 = residual()[n];
      t[m] = saved + C(2);
      const C r2 = residual()[n];
      t[m] = saved;
      const C c1 = r1 - r[n];
      if (!coeff_near_zero<C>((r2 - r1) - c1, tol)) continue;  // nonlinear
      if (coeff_near_zero<C>(c1, tol)) continue;               // no influence
      t[m] = saved - r[n] / c1;
      undetermined[static_cast<size_t>(m)] = 0;
      solved = true;
      break;
    }
    if (!solved) return {std::nullopt, ReverserObstruction{n}};
  }

  const Series<C> r = residual();
  for (int n = 1; n <= order; ++n) {
    if (!coeff_near_zero<C>(r[n], tol))
      return {std::nullopt, ReverserObstruction{n}};
  }
  return {t, std::nullopt};
}

/// Float-mode helper: largest |a_k - b_k|.
inline double max_coeff_diff(const FloatSeries& a, const FloatSeries& b) {
  double worst = 0.0;
  for (int k = 1; k <= std::min(a.order(), b.order()); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

inline FloatSeries to_float(const RationalSeries& s) {
  FloatSeries out(s.order());
  for (int k = 1; k <= s.order(); ++k) out[k] = to_double(s[k]);
  return out;
}

}  // namespace revline
