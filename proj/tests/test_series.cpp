#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "revline/series.hpp"

using namespace revline;

namespace {

RationalSeries make(std::vector<long> nums) {
  std::vector<Rational> c;
  for (long v : nums) c.emplace_back(v);
  return RationalSeries(c);
}

// X/(1-X) = X + X^2 + X^3 + ...
RationalSeries mobius_plus(int n) {
  RationalSeries s(n);
  for (int k = 1; k <= n; ++k) s[k] = 1;
  return s;
}

// X/(1+X) = X - X^2 + X^3 - ...
RationalSeries mobius_minus(int n) {
  RationalSeries s(n);
  for (int k = 1; k <= n; ++k) s[k] = (k % 2 == 1) ? 1 : -1;
  return s;
}

// Independent composition oracle: dense polynomial substitution with a
// degree cap, written against plain coefficient vectors (constant term
// included) rather than the Series arithmetic it checks.
std::vector<Rational> poly_mul_capped(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b,
                                      size_t cap) {
  std::vector<Rational> out(std::min(cap + 1, a.size() + b.size() - 1),
                            Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j <= cap; ++j) {
      if (i + j >= out.size()) break;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

RationalSeries oracle_compose(const RationalSeries& s,
                              const RationalSeries& t) {
  const size_t n = static_cast<size_t>(s.order());
  std::vector<Rational> tp(n + 1, Rational(0));  // t as dense poly
  for (int k = 1; k <= t.order(); ++k) tp[static_cast<size_t>(k)] = t[k];
  std::vector<Rational> acc(n + 1, Rational(0));
  std::vector<Rational> power{Rational(1)};  // t^0
  for (int k = 1; k <= s.order(); ++k) {
    power = poly_mul_capped(power, tp, n);
    for (size_t d = 0; d < power.size(); ++d) acc[d] += s[k] * power[d];
  }
  RationalSeries out(static_cast<int>(n));
  for (int k = 1; k <= out.order(); ++k) out[k] = acc[static_cast<size_t>(k)];
  return out;
}

std::mt19937_64 rng(0x5eedu);

Rational random_rational(bool nonzero = false) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  return Rational(p, den(rng));
}

RationalSeries random_invertible(int n) {
  RationalSeries s(n);
  s[1] = random_rational(true);
  for (int k = 2; k <= n; ++k) s[k] = random_rational();
  return s;
}

// Random involution with multiplier -1: conjugate of -X.
RationalSeries random_involution(int n) {
  RationalSeries u = random_invertible(n);
  u[1] = 1;
  return conjugate(u, negated(RationalSeries::identity(n)));
}

// Random series that is genuinely reversed by -X, with lowest order exactly
// p (p even): S = -(U^-1 o (-X) o U) with U = X + u_p X^p + higher. S is a
// product of the involutions -X and U^-1(-X)U.
RationalSeries random_reversible_lowest_order(int n, int p) {
  RationalSeries u = RationalSeries::identity(n);
  u[p] = random_rational(true);
  for (int k = p + 1; k <= n; ++k) u[k] = random_rational();
  RationalSeries invol =
      conjugate(invert(u), negated(RationalSeries::identity(n)));
  return negated(invol);
}

}  // namespace

TEST_CASE("identity element") {
  auto id4 = RationalSeries::identity(4);
  CHECK(id4 == make({1, 0, 0, 0}));
  auto s = make({2, 1, -3, 5});
  CHECK(compose(id4, s) == s);
  CHECK(compose(s, id4) == s);
  CHECK(invert(id4) == id4);
}

TEST_CASE("compose matches hand-expanded example and oracle") {
  auto s = make({1, 1, 0, 0});  // X + X^2
  auto t = make({1, 0, 1, 0});  // X + X^3
  CHECK(compose(s, t) == make({1, 1, 1, 2}));

  for (int trial = 0; trial < 25; ++trial) {
    auto a = random_invertible(12);
    auto b = random_invertible(12);
    CHECK(compose(a, b) == oracle_compose(a, b));
  }

  CHECK_THROWS_AS(compose(make({1, 0}), make({1, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("mobius pair composes to the identity") {
  for (int n : {8, 16}) {
    CHECK(compose(mobius_plus(n), mobius_minus(n)) ==
          RationalSeries::identity(n));
    CHECK(compose(mobius_minus(n), mobius_plus(n)) ==
          RationalSeries::identity(n));
  }
}

TEST_CASE("invert") {
  CHECK(invert(make({1, 1, 0, 0})) == make({1, -1, 2, -5}));
  CHECK(invert(RationalSeries::identity(4)) == RationalSeries::identity(4));

  RationalSeries twice(3);
  twice[1] = 2;
  RationalSeries half(3);
  half[1] = Rational(1, 2);
  CHECK(invert(twice) == half);

  RationalSeries degenerate(3);
  degenerate[2] = 1;
  CHECK_THROWS_AS(invert(degenerate), std::domain_error);
}

TEST_CASE("conjugate") {
  auto s = make({1, 1, 0, 0});
  CHECK(conjugate(RationalSeries::identity(4), s) == s);
  auto u = random_invertible(4);
  CHECK(conjugate(u, RationalSeries::identity(4)) ==
        RationalSeries::identity(4));

  RationalSeries two_x(2);
  two_x[1] = 2;
  RationalSeries expected(2);
  expected[1] = 1;
  expected[2] = Rational(1, 2);
  CHECK(conjugate(two_x, make({1, 1})) == expected);
}

TEST_CASE("multiplier and lowest_order") {
  CHECK(multiplier(RationalSeries::identity(4)) == 1);
  CHECK(multiplier(make({-1, 0, 1})) == -1);
  RationalSeries three(2);
  three[1] = 3;
  CHECK(multiplier(three) == 3);

  CHECK(lowest_order(make({1, 1, 0})) == 2);
  CHECK(lowest_order(RationalSeries::identity(5)) == std::nullopt);
  CHECK(lowest_order(make({1, 0, 5})) == 3);
  CHECK_THROWS_AS(lowest_order(three), std::domain_error);
}

TEST_CASE("is_involution") {
  auto neg = negated(RationalSeries::identity(6));
  CHECK(is_involution(neg));
  CHECK_FALSE(is_involution(make({1, 1, 0, 0, 0, 0})));
  CHECK(is_involution(conjugate(mobius_plus(6), neg)));
}

TEST_CASE("is_reversed_by") {
  const int n = 12;
  auto neg = negated(RationalSeries::identity(n));
  CHECK(is_reversed_by(neg, mobius_plus(n)));
  CHECK_FALSE(is_reversed_by(RationalSeries::identity(n),
                             resized(make({1, 1}), n)));
  CHECK(is_reversed_by(random_invertible(n), RationalSeries::identity(n)));
}

TEST_CASE("strong reversal identity of the mobius series") {
  for (int n : {8, 16}) {
    auto neg = negated(RationalSeries::identity(n));
    CHECK(compose(compose(neg, mobius_plus(n)), neg) == mobius_minus(n));
    CHECK(mobius_minus(n) == invert(mobius_plus(n)));
  }
}

TEST_CASE("solve_reverser on the identity returns the minimal solution") {
  auto res = solve_reverser(RationalSeries::identity(8), Rational(-1), 8);
  REQUIRE(res.found());
  CHECK(*res.reverser == negated(RationalSeries::identity(8)));
}

TEST_CASE("solve_reverser obstructions") {
  // X + X^2 is reversible at order 2 but not beyond: the order-3
  // coefficient equation is inconsistent (the conjugacy modulus of the
  // series and of its inverse differ).
  auto s2 = make({1, 1});
  auto ok = solve_reverser(s2, Rational(-1), 2);
  CHECK(ok.found());
  for (int n : {3, 8, 16}) {
    auto res = solve_reverser(s2, Rational(-1), n);
    REQUIRE(res.obstruction.has_value());
    CHECK(res.obstruction->order == 3);
  }

  // Odd lowest order: the multiplier equation at order p already fails.
  auto res3 = solve_reverser(make({1, 0, 1}), Rational(-1), 16);
  REQUIRE(res3.obstruction.has_value());
  CHECK(res3.obstruction->order == 3);

  // Multiplier of S not +-1: inconsistent at order 1.
  RationalSeries s(8);
  s[1] = 2;
  s[2] = 1;
  auto res1 = solve_reverser(s, Rational(-1), 8);
  REQUIRE(res1.obstruction.has_value());
  CHECK(res1.obstruction->order == 1);
}

TEST_CASE("solve_reverser finds an involutive reverser of the mobius series") {
  const int n = 16;
  auto res = solve_reverser(mobius_plus(n), Rational(-1), n);
  REQUIRE(res.found());
  const auto& t = *res.reverser;
  CHECK(is_involution(t));
  CHECK(compose(t, mobius_plus(n)) == compose(invert(mobius_plus(n)), t));
}

TEST_CASE("group laws on random invertible series") {
  const int n = 16;
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_invertible(n);
    auto si = invert(s);
    CHECK(compose(s, si) == RationalSeries::identity(n));
    CHECK(compose(si, s) == RationalSeries::identity(n));
    CHECK(invert(si) == s);
  }
}

TEST_CASE("associativity on random triples") {
  const int n = 10;
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_invertible(n);
    auto b = random_invertible(n);
    auto c = random_invertible(n);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("reversal is conjugation invariant") {
  const int n = 12;
  for (int trial = 0; trial < 20; ++trial) {
    auto t1 = random_involution(n);
    auto t2 = random_involution(n);
    auto s = compose(t1, t2);  // reversed by t1
    REQUIRE(is_reversed_by(t1, s));
    auto u = random_invertible(n);
    CHECK(is_reversed_by(conjugate(u, t1), conjugate(u, s)));
  }
}

TEST_CASE("negative-lead reversers of tangent-to-identity series are involutions") {
  const int n = 16;
  for (int p : {2, 4, 6}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto s = random_reversible_lowest_order(n, p);
      REQUIRE(lowest_order(s) == p);
      auto res = solve_reverser(s, Rational(-1), n);
      REQUIRE(res.found());
      CHECK(is_involution(*res.reverser));
    }
  }
}

TEST_CASE("a map commutes with its square and they share lowest order") {
  const int n = 14;
  std::uniform_int_distribution<int> pick_p(2, 5);
  for (int trial = 0; trial < 30; ++trial) {
    int p = pick_p(rng);
    RationalSeries s = RationalSeries::identity(n);
    s[p] = random_rational(true);
    for (int k = p + 1; k <= n; ++k) s[k] = random_rational();
    auto s2 = compose(s, s);
    CHECK(compose(s, s2) == compose(s2, s));
    CHECK(lowest_order(s2) == lowest_order(s));
  }
}
