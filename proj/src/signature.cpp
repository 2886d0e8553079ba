#include "revline/signature.hpp"

#include <cmath>
#include <stdexcept>

namespace revline {

namespace {
int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}
}  // namespace

SigWord::SigWord(std::string symbols) : w_(std::move(symbols)) {
  if (w_.empty()) throw std::invalid_argument("signature word is empty");
  for (char c : w_)
    if (c != '+' && c != '-')
      throw std::invalid_argument("signature word may only contain + and -");
}

int SigWord::sign(int j) const {
  return w_[static_cast<size_t>(mod(j, size()))] == '+' ? 1 : -1;
}

SigWord flip(const SigWord& w) {
  std::string out = w.text();
  for (char& c : out) c = (c == '+') ? '-' : '+';
  return SigWord(out);
}

SigWord shift(const SigWord& w, int k) {
  const int n = w.size();
  std::string out(static_cast<size_t>(n), '?');
  for (int j = 0; j < n; ++j)
    out[static_cast<size_t>(j)] = w.text()[static_cast<size_t>(mod(j - k, n))];
  return SigWord(out);
}

bool is_translation_reversible(const SigWord& w, int k) {
  return shift(w, k) == flip(w);
}

std::vector<double> reflection_compatible_centers(const SigWord& w) {
  const int n = w.size();
  std::vector<double> centers;
  for (int twice_c = 0; twice_c < 2 * n; ++twice_c) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      ok = w.sign(twice_c - j - 1) == w.sign(j);
    if (ok) centers.push_back(twice_c / 2.0);
  }
  return centers;
}

SignatureClassification classify(const SigWord& w) {
  SignatureClassification out;
  for (int k = 0; k < w.size(); ++k)
    if (is_translation_reversible(w, k)) out.shifts.push_back(k);
  out.centers = reflection_compatible_centers(w);
  return out;
}

SigWord signature_of(const MapExpr& f, int j_lo, int j_hi) {
  if (!(j_lo < j_hi))
    throw std::invalid_argument("signature range must be nonempty");
  for (int j = j_lo; j <= j_hi; ++j) {
    const double x = static_cast<double>(j);
    if (std::abs(eval(f, x) - x) > 1e-9)
      throw MapError("map does not fix the lattice on the requested range");
  }
  std::string out;
  for (int j = j_lo; j < j_hi; ++j) {
    const double mid = j + 0.5;
    const double d = eval(f, mid) - mid;
    if (std::abs(d) <= 1e-12)
      throw MapError("midpoint is fixed: map is not of signature type");
    out.push_back(d > 0.0 ? '+' : '-');
  }
  return SigWord(out);
}

}  // namespace revline
