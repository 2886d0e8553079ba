#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace revline {

/// Dense truncated Taylor polynomial over double: c[0..K] holds value and
/// scaled derivatives f^(k)(a)/k! at the expansion point. Used to push jets
/// through closed-form map formulas.
class TaylorPoly {
 public:
  explicit TaylorPoly(int order, double value = 0.0)
      : c_(static_cast<size_t>(order) + 1, 0.0) {
    if (order < 0) throw std::invalid_argument("taylor order must be >= 0");
    c_[0] = value;
  }

  static TaylorPoly variable(int order, double value) {
    TaylorPoly t(order, value);
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<size_t>(k)]; }

 private:
  std::vector<double> c_;
};

inline TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
  TaylorPoly out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = a[k] + b[k];
  return out;
}

inline TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b) {
  TaylorPoly out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = a[k] - b[k];
  return out;
}

inline TaylorPoly operator+(const TaylorPoly& a, double c) {
  TaylorPoly out = a;
  out[0] += c;
  return out;
}
inline TaylorPoly operator+(double c, const TaylorPoly& a) { return a + c; }
inline TaylorPoly operator-(const TaylorPoly& a, double c) { return a + (-c); }
inline TaylorPoly operator-(double c, const TaylorPoly& a) {
  TaylorPoly out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = -a[k];
  out[0] += c;
  return out;
}
inline TaylorPoly operator-(const TaylorPoly& a) { return 0.0 - a; }

inline TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
  TaylorPoly out(a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= a.order(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline TaylorPoly operator*(double c, const TaylorPoly& a) {
  TaylorPoly out(a.order());
  for (int k = 0; k <= a.order(); ++k) out[k] = c * a[k];
  return out;
}
inline TaylorPoly operator*(const TaylorPoly& a, double c) { return c * a; }

inline TaylorPoly operator/(const TaylorPoly& a, const TaylorPoly& b) {
  if (b[0] == 0.0) throw std::domain_error("taylor division by zero value");
  TaylorPoly out(a.order());
  for (int k = 0; k <= a.order(); ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

inline TaylorPoly operator/(double c, const TaylorPoly& b) {
  TaylorPoly num(b.order(), c);
  return num / b;
}

inline TaylorPoly exp(const TaylorPoly& f) {
  TaylorPoly g(f.order());
  g[0] = std::exp(f[0]);
  for (int k = 1; k <= f.order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * f[j] * g[k - j];
    g[k] = acc / k;
  }
  return g;
}

}  // namespace revline
