#include "doctest.h"
#include "helpers.hpp"
#include "powercone/forms.hpp"
#include "powercone/rng.hpp"

using namespace powercone;
using namespace powercone::testing;

namespace {

// independent multinomial-expansion oracle for single coefficients of q^e,
// q = c2 x^2 + c1 xy + c0 y^2
Rational multinomial_coeff_oracle(const Rational& c2, const Rational& c1, const Rational& c0, int e,
                                  int xdeg) {
  Rational acc(0);
  for (int i = 0; i <= e; ++i)
    for (int j = 0; j + i <= e; ++j) {
      int k = e - i - j;
      if (2 * i + j != xdeg) continue;
      Rational term(factorial(e) / (factorial(i) * factorial(j) * factorial(k)));
      for (int t = 0; t < i; ++t) term *= c2;
      for (int t = 0; t < j; ++t) term *= c1;
      for (int t = 0; t < k; ++t) term *= c0;
      acc += term;
    }
  return acc;
}

}  // namespace

TEST_CASE("binary multiplication basics") {
  auto xpy = bform(1, {1, 1});   // y + x  (coeff of x^0 y^1 first)
  auto xmy = bform(1, {-1, 1});  // -y + x
  auto prod = xpy * xmy;
  CHECK(prod == bform(2, {-1, 0, 1}));  // x^2 - y^2

  Rng rng(7);
  auto f = random_rational_form(rng, 5);
  BinaryForm<Rational> one(0);
  one[0] = 1;
  CHECK(f * one == f);
}

TEST_CASE("quartic power coefficients against multinomial oracle") {
  // (x^2 + xy - y^2)^4: x^8 and y^8 coefficients both 1
  auto q = bform(2, {-1, 1, 1});
  auto q4 = pow(q, 4);
  CHECK(q4[8] == multinomial_coeff_oracle(1, 1, -1, 4, 8));
  CHECK(q4[0] == multinomial_coeff_oracle(1, 1, -1, 4, 0));
  CHECK(q4[8] == 1);
  CHECK(q4[0] == 1);
  // a couple of interior coefficients against the oracle too
  for (int xdeg : {3, 4, 5})
    CHECK(q4[xdeg] == multinomial_coeff_oracle(1, 1, -1, 4, xdeg));
}

TEST_CASE("substitution") {
  // f = (y - x^2)^4 + 1 at y -> x^2 gives 1
  auto y_minus_x2 = BinaryPoly<Rational>::monomial(0, 1) - BinaryPoly<Rational>::monomial(2, 0);
  auto f = pow(y_minus_x2, 4) + BinaryPoly<Rational>::constant(1);
  auto r = substitute(f, BinaryPoly<Rational>::monomial(1, 0), BinaryPoly<Rational>::monomial(2, 0));
  CHECK(r == BinaryPoly<Rational>::constant(1));

  // identity substitution on x^8
  auto x8 = to_poly(bmono(8, 8));
  CHECK(substitute(x8, BinaryPoly<Rational>::monomial(1, 0), BinaryPoly<Rational>::monomial(0, 1)) == x8);

  // F2 = (y - x^{r1})^4 + 1 with r1 = 1, evaluated at y -> x
  auto y_minus_x = BinaryPoly<Rational>::monomial(0, 1) - BinaryPoly<Rational>::monomial(1, 0);
  auto F2 = pow(y_minus_x, 4) + BinaryPoly<Rational>::constant(1);
  auto s = substitute(F2, BinaryPoly<Rational>::monomial(1, 0), BinaryPoly<Rational>::monomial(1, 0));
  CHECK(s == BinaryPoly<Rational>::constant(1));
}

TEST_CASE("substitution is multiplicative") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto f = to_poly(random_rational_form(rng, 3));
    auto g = to_poly(random_rational_form(rng, 2));
    auto px = to_poly(random_rational_form(rng, 1));
    auto py = to_poly(random_rational_form(rng, 1));
    CHECK(substitute(f * g, px, py) == substitute(f, px, py) * substitute(g, px, py));
  }
}

TEST_CASE("apolar pairing monomial rule") {
  // <x^8, x^8> = 8! = 40320
  auto p = apolar_pair(bmono(8, 8), bmono(8, 8));
  CHECK(p.degree == 0);
  CHECK(p[0] == 40320);

  // <x, y^3> = 0
  auto z = apolar_pair(bmono(1, 1), bmono(3, 0));
  CHECK(z.is_zero());

  // <xy, x^2 y^2> = 4 xy
  auto r = apolar_pair(bmono(2, 1), bmono(4, 2));
  CHECK(r.degree == 2);
  CHECK(r[1] == 4);
  CHECK(r[0] == 0);
  CHECK(r[2] == 0);
}

TEST_CASE("apolar pairing bilinear and positive definite on fixed degree") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    auto g = random_rational_form(rng, 3);
    auto f1 = random_rational_form(rng, 7);
    auto f2 = random_rational_form(rng, 7);
    Rational lam = make_rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 5));
    auto lhs = apolar_pair(g, f1 + lam * f2);
    auto rhs = apolar_pair(g, f1) + lam * apolar_pair(g, f2);
    CHECK(lhs == rhs);
  }
  // Gram of the monomial basis in degree 5 is diagonal with positive entries,
  // and the pairing is symmetric there
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) {
      auto pij = apolar_pair(bmono(5, i), bmono(5, j));
      auto pji = apolar_pair(bmono(5, j), bmono(5, i));
      CHECK(pij == pji);
      if (i == j) {
        CHECK(pij[0] > 0);
      } else {
        CHECK(pij.is_zero());
      }
    }
}

TEST_CASE("coordinate changes") {
  std::array<std::array<Rational, 2>, 2> swap_xy = {{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
  CHECK(change_coords(bmono(8, 8), swap_xy) == bmono(8, 0));

  // x -> x+y, y -> x-y sends x^2 - y^2 to 4xy
  std::array<std::array<Rational, 2>, 2> M = {{{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}}};
  auto img = change_coords(bform(2, {-1, 0, 1}), M);
  CHECK(img == bform(2, {0, 4, 0}));

  std::array<std::array<Rational, 2>, 2> sing = {{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}};
  CHECK_THROWS(change_coords(bmono(2, 1), sing));
}

TEST_CASE("coordinate change round trip") {
  Rng rng(19);
  for (int rep = 0; rep < 8; ++rep) {
    std::array<std::array<Rational, 2>, 2> M;
    Rational det(0);
    do {
      for (auto& row : M)
        for (auto& e : row) e = make_rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3));
      det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    } while (det == 0);
    std::array<std::array<Rational, 2>, 2> Minv = {
        {{M[1][1] / det, -M[0][1] / det}, {-M[1][0] / det, M[0][0] / det}}};
    auto f = random_rational_form(rng, 6);
    CHECK(change_coords(change_coords(f, M), Minv) == f);
  }
}

TEST_CASE("gcd and division") {
  auto x = bmono(1, 1);
  auto y = bmono(1, 0);
  auto xpy = bform(1, {1, 1});
  auto f = x * x * xpy;       // x^2 (x+y)
  auto g = x * xpy * xpy;     // x (x+y)^2
  auto d = gcd_forms(f, g);   // x (x+y)
  CHECK(d == x * xpy);

  auto q = divide_forms(f, x * xpy);
  REQUIRE(q.has_value());
  CHECK(*q == x);
  CHECK(!divide_forms(f, y).has_value());
}

TEST_CASE("squarefree decomposition and roots") {
  auto x = bmono(1, 1);
  auto xpy = bform(1, {1, 1});
  auto x2my2 = bform(2, {-1, 0, 1});
  auto f = Rational(3) * (pow(x, 4) * pow(xpy, 2) * x2my2);
  auto sf = squarefree_decompose(f);
  // reassemble and compare
  BinaryForm<Rational> prod(0);
  prod[0] = 1;
  for (const auto& p : sf.parts)
    for (int e = 0; e < p.multiplicity; ++e) prod = prod * p.factor;
  CHECK(sf.unit * prod == f);
  int mult4 = 0;
  for (const auto& p : sf.parts)
    if (p.multiplicity == 4) ++mult4;
  CHECK(mult4 == 1);

  auto s = sqrt_form(pow(xpy, 2) * pow(x, 4));
  REQUIRE(s.has_value());
  CHECK(pow(*s, 2) == pow(xpy, 2) * pow(x, 4));
  CHECK(!sqrt_form(x * xpy).has_value());

  auto q = bform(2, {2, -1, 3});
  auto fr = fourth_root_form(pow(q, 4));
  REQUIRE(fr.has_value());
  CHECK(pow(*fr, 4) == pow(q, 4));
  CHECK((*fr == q || *fr == Rational(-1) * q));
}

TEST_CASE("resultant detects common factors") {
  auto x = bmono(1, 1);
  auto xpy = bform(1, {1, 1});
  auto ymx = bform(1, {1, -1});
  CHECK(resultant(x * xpy, x * ymx) == 0);
  CHECK(resultant(xpy, ymx) != 0);
  // classical 2x2: res(ax+by, cx+dy) = ad - bc up to sign
  auto l1 = bform(1, {3, 2});  // 2x + 3y
  auto l2 = bform(1, {5, 7});  // 7x + 5y
  Rational r = resultant(l1, l2);
  CHECK((r == Rational(2 * 5 - 3 * 7) || r == Rational(3 * 7 - 2 * 5)));
}

TEST_CASE("ternary arithmetic and apolarity") {
  TernaryForm<Rational> conic(2);  // b^2 - ac
  conic.add_term({0, 2, 0}, Rational(1));
  conic.add_term({1, 0, 1}, Rational(-1));
  auto sq = conic * conic;
  CHECK(sq.degree == 4);
  CHECK(sq.coeff({0, 4, 0}) == 1);
  CHECK(sq.coeff({2, 0, 2}) == 1);
  CHECK(sq.coeff({1, 2, 1}) == -2);

  // veronese pullback of b^2 - ac vanishes identically
  auto pull = veronese_pullback(conic);
  CHECK(pull.is_zero());

  // ternary apolar monomial rule: <abc, a^2 b^2 c^2> = 8 abc
  TernaryForm<Rational> abc(3), a2b2c2(6);
  abc.add_term({1, 1, 1}, Rational(1));
  a2b2c2.add_term({2, 2, 2}, Rational(1));
  auto p = apolar_pair(abc, a2b2c2);
  CHECK(p.coeff({1, 1, 1}) == 8);
}

TEST_CASE("rationalize round trips simple fractions") {
  CHECK(nearest_rational(0.5, 100) == make_rational(1, 2));
  CHECK(nearest_rational(-2.0 / 3.0, 1000) == make_rational(-2, 3));
  CHECK(nearest_rational(0.0, 10) == 0);
  double pi = 3.14159265358979;
  CHECK(nearest_rational(pi, 200) == make_rational(355, 113));
}
