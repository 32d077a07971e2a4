#pragma once

#include "powercone/forms.hpp"
#include "powercone/rng.hpp"

namespace powercone::testing {

inline BinaryForm<Rational> random_rational_form(Rng& rng, int degree, long lo = -9, long hi = 9) {
  BinaryForm<Rational> f(degree);
  for (int i = 0; i <= degree; ++i)
    f[i] = make_rational(rng.uniform_int(lo, hi), rng.uniform_int(1, 7));
  return f;
}

inline BinaryForm<Rational> bform(int degree, std::initializer_list<long> coeffs_by_xdeg) {
  BinaryForm<Rational> f(degree);
  int i = 0;
  for (long c : coeffs_by_xdeg) f[i++] = Rational(c);
  return f;
}

// x^i y^(d-i) shorthand
inline BinaryForm<Rational> bmono(int d, int i, long c = 1) {
  BinaryForm<Rational> f(d);
  f[i] = Rational(c);
  return f;
}

// the psd quartic with Gram [[2,0,-1,0],[0,3,0,0],[-1,0,2,0],[0,0,0,3]] over
// the basis (a(a+c), ab, c(a+c), bc); real zeros (0:1:0) and (1:0:-1)
inline TernaryForm<Rational> two_zero_quartic() {
  auto mk = [](std::initializer_list<std::pair<Exp3, Rational>> ts) {
    TernaryForm<Rational> f(2);
    for (auto& [e, c] : ts) f.add_term(e, c);
    return f;
  };
  auto v1 = mk({{{2, 0, 0}, 1}, {{1, 0, 1}, 1}});
  auto v2 = mk({{{1, 1, 0}, 1}});
  auto v3 = mk({{{0, 0, 2}, 1}, {{1, 0, 1}, 1}});
  auto v4 = mk({{{0, 1, 1}, 1}});
  return Rational(2) * (v1 * v1) + Rational(3) * (v2 * v2) + Rational(2) * (v3 * v3) +
         Rational(3) * (v4 * v4) + Rational(-2) * (v1 * v3);
}

// (xy)^4 + (x^2-y^2)^4, the boundary octic exposed by two_zero_quartic
inline BinaryForm<Rational> boundary_octic() {
  return pow(bmono(2, 1), 4) + pow(bform(2, {-1, 0, 1}), 4);
}

}  // namespace powercone::testing
