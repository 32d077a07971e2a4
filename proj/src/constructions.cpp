#include "powercone/constructions.hpp"

namespace powercone {

BinaryPoly<Rational> ladder_step(const BinaryPoly<Rational>& g, long r, int s) {
  if (s < 1 || r < 1) throw std::invalid_argument("ladder_step: bad parameters");
  if (g.deg_x() >= 2L * s * r)
    throw std::invalid_argument("ladder_step: deg_x g must be below 2 s r");
  auto binomial_part = BinaryPoly<Rational>::monomial(0, 1) - BinaryPoly<Rational>::monomial(r, 0);
  return g * pow(binomial_part, 2L * s) + BinaryPoly<Rational>::constant(1);
}

Ladder ladder_build(int s, int n, const std::optional<std::vector<long>>& r_seq) {
  if (s < 1 || n < 1) throw std::invalid_argument("ladder_build: s and n must be positive");
  Ladder L;
  L.s = s;
  if (r_seq) {
    if (static_cast<int>(r_seq->size()) < n - 1)
      throw std::invalid_argument("ladder_build: r sequence too short");
    long sum = 0;
    for (int i = 0; i < n - 1; ++i) {
      long r = (*r_seq)[i];
      if (r < 1 || (i > 0 && r <= 4 * sum))
        throw std::invalid_argument("ladder_build: r sequence violates the growth constraint");
      sum += r;
      L.r_seq.push_back(r);
    }
  } else {
    long sum = 0;
    for (int i = 0; i < n - 1; ++i) {
      long r = (i == 0) ? 1 : 4 * sum + 1;
      L.r_seq.push_back(r);
      sum += r;
    }
  }
  L.levels.push_back(BinaryPoly<Rational>::constant(1));
  for (int k = 1; k < n; ++k) L.levels.push_back(ladder_step(L.levels.back(), L.r_seq[k - 1], s));
  return L;
}

std::array<BinaryForm<Rational>, 4> full_dim_witness(int d) {
  if (d < 1) throw std::invalid_argument("full_dim_witness: d must be positive");
  auto mono = [&](int xdeg, int ydeg) {
    BinaryForm<Rational> f(xdeg + ydeg);
    f[xdeg] = 1;
    return f;
  };
  BinaryForm<Rational> p1 = mono(d, 0), p2 = mono(0, d), p3(d), p4(d);
  switch (d % 3) {
    case 0:
      p3 = mono(2 * d / 3, d / 3);
      p4 = mono(d / 3, 2 * d / 3);
      break;
    case 2:
      p3 = mono(2 * (d - 2) / 3 + 1, (d - 2) / 3 + 1);
      p4 = mono((d - 2) / 3 + 1, 2 * (d - 2) / 3 + 1);
      break;
    default:  // d = 1 mod 3: monomials do not suffice, mix in x^d + y^d
      p3 = mono((d + 2) / 3, (2 * d - 2) / 3);
      p4 = mono(d, 0) + mono(0, d);
      break;
  }
  return {p1, p2, p3, p4};
}

bool ideal_surjective_at(const std::array<BinaryForm<Rational>, 4>& p, int degree4d) {
  const int d = p[0].degree;
  if (degree4d != 4 * d) throw std::invalid_argument("ideal_surjective_at: degree must be 4d");
  std::vector<BinaryForm<Rational>> rows;
  for (const auto& pi : p) {
    auto cube = pi * pi * pi;
    for (int m = 0; m <= d; ++m) rows.push_back(cube * binary_monomial<Rational>(d, m));
  }
  QMat M(static_cast<int>(rows.size()), 4 * d + 1);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j <= 4 * d; ++j) M.at(static_cast<int>(r), j) = rows[r][j];
  return rank_exact(M) == 4 * d + 1;
}

Admissibility is_strictly_admissible(const BinaryPoly<Rational>& f) {
  Admissibility out;
  if (f.is_zero() || (f.terms.size() == 1 && f.terms.count({0, 0}))) {
    out.reason = "constant polynomial";
    return out;
  }
  if (f.terms.count({0, 0})) {
    out.reason = "f(0,0) is nonzero";
    return out;
  }
  long d = f.deg_y();
  long b = -1;
  Rational alpha;
  for (const auto& [e, c] : f.terms)
    if (e.second == d && e.first > b) {
      b = e.first;
      alpha = c;
    }
  if (b % 2 != 0 || d % 2 != 0) {
    out.strict = true;
    return out;
  }
  if (alpha > 0) {
    out.strict = true;
    return out;
  }
  out.reason = "leading y-degree monomial has nonpositive coefficient with even exponents";
  return out;
}

Admissibility is_admissible_via(const BinaryPoly<Rational>& f,
                                const std::array<std::array<Rational, 2>, 2>& M) {
  Rational det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
  if (det == 0) throw std::invalid_argument("is_admissible_via: singular matrix");
  BinaryPoly<Rational> px, py;
  px.add_term(1, 0, M[0][0]);
  px.add_term(0, 1, M[0][1]);
  py.add_term(1, 0, M[1][0]);
  py.add_term(0, 1, M[1][1]);
  return is_strictly_admissible(substitute(f, px, py));
}

PythagorasBounds pythagoras_bounds(int n, int s, int d) {
  if (n < 1 || s < 1 || d < 1) throw std::invalid_argument("pythagoras_bounds: positive integers required");
  PythagorasBounds out;
  unsigned long twosd = static_cast<unsigned long>(2) * s * d;
  Integer dim_big = binomial(n + twosd - 1, twosd);
  Integer dim_small = binomial(n + d - 1, d);
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), dim_big.get_mpz_t(), dim_small.get_mpz_t());
  out.lower = (r == 0) ? q : Integer(q + 1);
  out.upper = dim_big;
  Integer a = 1;
  for (int i = 0; i < n - 1; ++i) a *= 2 * s;
  out.asymptotic = a;
  return out;
}

}  // namespace powercone
