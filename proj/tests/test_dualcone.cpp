#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "powercone/apolar.hpp"
#include "powercone/dualcone.hpp"
#include "powercone/rootfind.hpp"

using namespace powercone;
using namespace powercone::testing;

TEST_CASE("u_basis spans the 9-dimensional relation kernel") {
  const auto& B = u_basis();
  REQUIRE(B.size() == 9);
  for (const auto& f : B)
    for (int k = 0; k < 6; ++k) CHECK(u_relation_value(f, k) == 0);
  // independence: 9x15 coefficient matrix has rank 9
  auto monos = ternary_monomials(4);
  QMat M(9, 15);
  for (int r = 0; r < 9; ++r)
    for (int c = 0; c < 15; ++c) M.at(r, c) = B[r].coeff(monos[c]);
  CHECK(rank_exact(M) == 9);
  // a^4 is in U: it is a basis element and satisfies the relations
  TernaryForm<Rational> a4(4);
  a4.add_term({4, 0, 0}, 1);
  for (int k = 0; k < 6; ++k) CHECK(u_relation_value(a4, k) == 0);
}

TEST_CASE("eval_map basics") {
  auto F = eval_map(bmono(8, 8));  // x^8 -> 40320 a^4
  CHECK(F.coeff({4, 0, 0}) == 40320);
  CHECK(F.terms.size() == 1);

  CHECK(eval_map(BinaryForm<Rational>(8)).is_zero());

  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    auto L = random_rational_form(rng, 8);
    auto G = eval_map(L);
    for (int k = 0; k < 6; ++k) CHECK(u_relation_value(G, k) == 0);
  }
}

TEST_CASE("eval_map is linear and inverted by functional_of_quartic") {
  Rng rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    auto L1 = random_rational_form(rng, 8);
    auto L2 = random_rational_form(rng, 8);
    Rational lam = make_rational(rng.uniform_int(-5, 5), rng.uniform_int(1, 4));
    CHECK(eval_map(L1 + lam * L2) == eval_map(L1) + lam * eval_map(L2));
    CHECK(functional_of_quartic(eval_map(L1)) == L1);
  }
  // not in U -> error
  TernaryForm<Rational> bad(4);
  bad.add_term({2, 2, 0}, 1);
  CHECK_THROWS(functional_of_quartic(bad));
}

TEST_CASE("derivative identity holds exactly") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    auto L = random_rational_form(rng, 8);
    std::array<Rational, 3> u = {make_rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3)),
                                 make_rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3)),
                                 make_rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3))};
    auto pair = derivative_identity_check(L, u);
    CHECK(pair.lhs == pair.rhs);
  }
}

TEST_CASE("duality positivity: F at coefficients of q equals <L, q^4>") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    auto L = random_rational_form(rng, 8);
    auto F = eval_map(L);
    auto q = random_rational_form(rng, 2);
    Rational lhs = evaluate(F, q[2], q[1], q[0]);  // (a,b,c) = coefficients of x^2, xy, y^2
    Rational rhs = pair_octic(L, pow(q, 4));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("real zeros of the two-zero quartic") {
  auto Fq = two_zero_quartic();
  for (int k = 0; k < 6; ++k) CHECK(u_relation_value(Fq, k) == 0);  // lies in U
  auto F = to_float(Fq);
  auto rz = real_zeros_quartic(F, 1e-10, 20);
  CHECK(!rz.infinite_family);
  REQUIRE(rz.zeros.size() == 2);
  // normalized expected points: (0,1,0) and (1,0,-1)/sqrt(2)
  const double s = 1.0 / std::sqrt(2.0);
  bool saw_b = false, saw_ac = false;
  for (const auto& z : rz.zeros) {
    if (std::abs(z.xi[0]) < 1e-6 && std::abs(z.xi[1] - 1) < 1e-6 && std::abs(z.xi[2]) < 1e-6) saw_b = true;
    if (std::abs(z.xi[0] - s) < 1e-6 && std::abs(z.xi[1]) < 1e-6 && std::abs(z.xi[2] + s) < 1e-6) saw_ac = true;
    CHECK(z.discriminant >= -1e-9);  // both zeros are indefinite quadratics
  }
  CHECK(saw_b);
  CHECK(saw_ac);

  // zeros reproduce under a doubled grid
  auto rz2 = real_zeros_quartic(F, 1e-10, 40);
  CHECK(rz2.zeros.size() == rz.zeros.size());
}

TEST_CASE("a^4 has an infinite zero family") {
  TernaryForm<double> F(4);
  F.terms[{4, 0, 0}] = 40320.0;
  auto rz = real_zeros_quartic(F, 1e-10, 16);
  CHECK(rz.infinite_family);
}

TEST_CASE("three-zero boundary functional: zeros and generator degree") {
  // parameter: the real root near -21 of
  // c^8 - c^7 + c^6 - 133 c^5 - 135542 c^4 + 1550171 c^3 - 1534319 c^2 + 1290239 c + 1
  std::vector<Rational> minpoly = {1, 1290239, -1534319, 1550171, -135542, -133, 1, -1, 1};
  BigFloat cb = newton_root(minpoly, -21.0, 200);
  double c = cb.to_double();
  // residual actually tiny at the root
  {
    double p = 0;
    for (int i = 8; i >= 0; --i) p = p * c + minpoly[i].get_d();
    CHECK(std::abs(p) < 1e-4);  // |p'(c)| is ~1e13 here, so this pins c well
  }

  BinaryForm<double> q1(2), q2(2), q3(2);
  q1[1] = 1;                        // xy
  q2[2] = 1; q2[1] = 1; q2[0] = -1; // x^2 + xy - y^2
  q3[2] = 1; q3[1] = -16; q3[0] = c;// x^2 - 16xy + c y^2

  // L spans the octics apolar to <q1^3, q2^3, q3^3>_8: null vector of the
  // weighted product matrix
  std::vector<BinaryForm<double>> prods;
  for (const auto& q : {q1, q2, q3}) {
    auto q3f = q * q * q;
    for (int m = 0; m <= 2; ++m) {
      BinaryForm<double> mono(2);
      mono[m] = 1;
      prods.push_back(q3f * mono);
    }
  }
  // Q[p][k] = prods[p][k] * w_k; the functional's coefficients form the null
  // vector of Q, i.e. of Q^T Q over the coordinate index k
  std::array<double, 9> w{};
  for (int k = 0; k <= 8; ++k) w[k] = factorial(k).get_d() * factorial(8 - k).get_d();
  SymMat QtQ(9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) {
      double s = 0;
      for (const auto& p : prods) s += p[i] * w[i] * p[j] * w[j];
      QtQ.at(i, j) = s;
    }
  auto eig = eigen_sym(QtQ, 1e-14);
  // rank 8: one near-zero eigenvalue
  CHECK(eig.values[0] < 1e-12 * eig.values[8]);
  BinaryForm<double> L(8);
  for (int k = 0; k <= 8; ++k) L[k] = eig.vectors.at(k, 0);
  // sanity: pairing with every product vanishes, relative to the weighted norm
  for (const auto& p : prods) {
    double wnorm = 0;
    for (int k = 0; k <= 8; ++k) wnorm += p[k] * w[k] * p[k] * w[k];
    wnorm = std::sqrt(wnorm);
    CHECK(std::abs(pair_octic(L, p)) < 1e-7 * norm2(L) * wnorm);
  }

  auto F = eval_map(L);
  double nf = norm2(F);
  // F vanishes at the three stated projective points
  auto at = [&](double a, double b, double cc) {
    double n = std::sqrt(a * a + b * b + cc * cc);
    return evaluate(F, a / n, b / n, cc / n);
  };
  CHECK(std::abs(at(0, 1, 0)) < 1e-8 * nf);
  CHECK(std::abs(at(1, 1, -1)) < 1e-8 * nf);
  CHECK(std::abs(at(1, -16, c)) < 1e-8 * nf);

  // sign-normalize so F is psd (the null vector is determined up to sign)
  if (evaluate(F, 1.0, 0.0, 0.0) < 0) {
    for (auto& [e, cc] : F.terms) cc = -cc;
    for (int k = 0; k <= 8; ++k) L[k] = -L[k];
  }
  auto rz = real_zeros_quartic(F, 1e-9, 28);
  CHECK(!rz.infinite_family);
  CHECK(rz.zeros.size() == 3);

  // apolar ideal of L is minimally generated in degree 5: the degree-4
  // catalecticant (5x5) is nonsingular
  DMat cat4(5, 5);
  for (int i = 0; i <= 4; ++i) {
    BinaryForm<double> mono(4);
    mono[i] = 1;
    auto img = apolar_pair(mono, L);
    for (int t = 0; t <= 4; ++t) cat4.at(t, i) = img[t];
  }
  auto sv = singular_values(cat4);
  CHECK(sv[4] > 1e-8 * sv[0]);
}

TEST_CASE("sum of the three-zero and two-zero quartics has exactly the common zero") {
  // build the three-zero boundary quartic from its defining triple
  std::vector<Rational> minpoly = {1, 1290239, -1534319, 1550171, -135542, -133, 1, -1, 1};
  double c = newton_root(minpoly, -21.0, 120).to_double();
  BinaryForm<double> q1(2), q2(2), q3(2);
  q1[1] = 1;
  q2[2] = 1; q2[1] = 1; q2[0] = -1;
  q3[2] = 1; q3[1] = -16; q3[0] = c;
  std::vector<BinaryForm<double>> prods;
  for (const auto& q : {q1, q2, q3}) {
    auto q3f = q * q * q;
    for (int m = 0; m <= 2; ++m) {
      BinaryForm<double> mono(2);
      mono[m] = 1;
      prods.push_back(q3f * mono);
    }
  }
  std::array<double, 9> w{};
  for (int k = 0; k <= 8; ++k) w[k] = factorial(k).get_d() * factorial(8 - k).get_d();
  SymMat QtQ(9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) {
      double s = 0;
      for (const auto& p : prods) s += p[i] * w[i] * p[j] * w[j];
      QtQ.at(i, j) = s;
    }
  auto eig = eigen_sym(QtQ, 1e-14);
  BinaryForm<double> L(8);
  for (int k = 0; k <= 8; ++k) L[k] = eig.vectors.at(k, 0);
  auto F3 = eval_map(L);
  if (evaluate(F3, 1.0, 0.0, 0.0) < 0)
    for (auto& [e, cc] : F3.terms) cc = -cc;
  auto F2 = to_float(two_zero_quartic());
  // normalize scales and add
  double n3 = norm2(F3), n2 = norm2(F2);
  TernaryForm<double> sum(4);
  for (const auto& [e, cc] : F3.terms) sum.terms[e] = cc / n3;
  for (const auto& [e, cc] : F2.terms) {
    auto it = sum.terms.find(e);
    if (it == sum.terms.end())
      sum.terms[e] = cc / n2;
    else
      it->second += cc / n2;
  }
  auto rz = real_zeros_quartic(sum, 1e-9, 24);
  CHECK(!rz.infinite_family);
  REQUIRE(rz.zeros.size() == 1);
  CHECK(std::abs(rz.zeros[0].xi[0]) < 1e-6);
  CHECK(std::abs(rz.zeros[0].xi[1] - 1.0) < 1e-6);
  CHECK(std::abs(rz.zeros[0].xi[2]) < 1e-6);
}
