#pragma once

#include <string>
#include <vector>

#include "revline/smoothmap.hpp"

namespace revline {

/// Finite word over {+,-} standing for its n-periodic doubly infinite
/// extension; index j labels the interval (j, j+1) of the line minus the
/// integer lattice.
class SigWord {
 public:
  explicit SigWord(std::string symbols);

  int size() const { return static_cast<int>(w_.size()); }
  /// Sign (+1/-1) on interval (j, j+1), for any integer j (periodic).
  int sign(int j) const;
  const std::string& text() const { return w_; }

  friend bool operator==(const SigWord& a, const SigWord& b) {
    return a.w_ == b.w_;
  }

 private:
  std::string w_;
};

/// Every symbol negated (the signature of the inverse map).
SigWord flip(const SigWord& w);

/// Index action of conjugating by x -> x + k: w'[j] = w[j - k].
SigWord shift(const SigWord& w, int k);

/// True iff shift(w, k) == flip(w): the signature condition for x -> x + k
/// to reverse a map with this signature.
bool is_translation_reversible(const SigWord& w, int k);

/// All reflection centers c in {0, 1/2, 1, ..., n - 1/2} whose induced
/// interval action rho_c(j) = 2c - j - 1 satisfies w[rho_c(j)] == w[j] for
/// every j: the signature-level necessary condition for reversal by an
/// order reversing involution fixing the lattice setwise.
std::vector<double> reflection_compatible_centers(const SigWord& w);

struct SignatureClassification {
  std::vector<int> shifts;      // k in [0, n) with shift(w,k) == flip(w)
  std::vector<double> centers;  // compatible reflection centers in [0, n)
};

/// Exhaustive enumeration of all n shifts and 2n reflection centers.
SignatureClassification classify(const SigWord& w);

/// Reads the word of f on intervals (j, j+1) for j in [j_lo, j_hi) by
/// sampling midpoints. Requires fix(f) to contain the lattice points of the
/// range; throws MapError when a midpoint is itself fixed.
SigWord signature_of(const MapExpr& f, int j_lo, int j_hi);

}  // namespace revline
