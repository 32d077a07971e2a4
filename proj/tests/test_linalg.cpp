#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "powercone/forms.hpp"
#include "powercone/linalg.hpp"
#include "powercone/rng.hpp"

using namespace powercone;
using namespace powercone::testing;

namespace {

// independent cofactor-expansion determinant (oracle for n <= 4)
Rational cofactor_det(const QMat& M) {
  const int n = M.rows;
  if (n == 1) return M.at(0, 0);
  Rational acc(0);
  int sign = 1;
  for (int j = 0; j < n; ++j) {
    QMat sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        sub.at(i - 1, cc++) = M.at(i, c);
      }
    }
    acc += Rational(sign) * M.at(0, j) * cofactor_det(sub);
    sign = -sign;
  }
  return acc;
}

// independent plain fraction row-reduction rank (oracle)
int plain_rank(QMat m) {
  int rank = 0, row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    for (int i = row + 1; i < m.rows; ++i) {
      Rational f = m.at(i, col) / m.at(row, col);
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

QMat random_qmat(Rng& rng, int r, int c) {
  QMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = make_rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));
  return m;
}

}  // namespace

TEST_CASE("rank basics") {
  CHECK(rank_exact(QMat::identity(9)) == 9);
  QMat z(4, 6);
  CHECK(rank_exact(z) == 0);
}

TEST_CASE("rank of the two-sextic degree-8 system is 6") {
  // span{ q^3 * m : q in {xy, x^2-y^2}, m in {x^2, xy, y^2} } inside R[x,y]_8,
  // Koszul count for two coprime sextics at degree 8: 2*3 - 0 = 6
  auto xy = bmono(2, 1);
  auto x2my2 = bform(2, {-1, 0, 1});
  std::vector<BinaryForm<Rational>> rows;
  for (const auto& q : {xy, x2my2, x2my2}) {  // triple with a repeat, 9 products
    auto q3 = pow(q, 3);
    for (int m = 0; m <= 2; ++m) rows.push_back(q3 * bmono(2, m));
  }
  QMat M(static_cast<int>(rows.size()), 9);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j <= 8; ++j) M.at(static_cast<int>(r), j) = rows[r][j];
  CHECK(rank_exact(M) == 6);
  CHECK(plain_rank(M) == 6);
}

TEST_CASE("rank equals rank of transpose on random matrices") {
  Rng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    QMat m = random_qmat(rng, 4 + static_cast<int>(rng.next_u64() % 4), 3 + static_cast<int>(rng.next_u64() % 5));
    CHECK(rank_exact(m) == rank_exact(m.transposed()));
    CHECK(rank_exact(m) == plain_rank(m));
  }
}

TEST_CASE("determinants") {
  QMat m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  CHECK(det_exact(m) == -2);

  QMat r(3, 3);  // rank deficient
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.at(i, j) = i + j;
  CHECK(det_exact(r) == 0);

  Rng rng(23);
  for (int rep = 0; rep < 12; ++rep) {
    int n = 2 + static_cast<int>(rng.next_u64() % 3);
    QMat a = random_qmat(rng, n, n);
    CHECK(det_exact(a) == cofactor_det(a));
  }
}

TEST_CASE("kernel vectors are exact kernel elements") {
  Rng rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    QMat m = random_qmat(rng, 3, 6);
    auto basis = kernel_exact(m);
    CHECK(static_cast<int>(basis.size()) == 6 - rank_exact(m));
    for (const auto& v : basis)
      for (int i = 0; i < m.rows; ++i) {
        Rational s(0);
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * v[j];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("solve_exact") {
  QMat A(2, 2);
  A.at(0, 0) = 2;
  A.at(0, 1) = 1;
  A.at(1, 0) = 1;
  A.at(1, 1) = 3;
  auto x = solve_exact(A, {Rational(5), Rational(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 3);

  QMat B(2, 1);
  B.at(0, 0) = 1;
  B.at(1, 0) = 1;
  CHECK(!solve_exact(B, {Rational(0), Rational(1)}).has_value());
}

TEST_CASE("exact char poly matches determinant and trace") {
  Rng rng(41);
  for (int rep = 0; rep < 6; ++rep) {
    int n = 2 + static_cast<int>(rng.next_u64() % 3);
    QMat a = random_qmat(rng, n, n);
    auto cp = char_poly_exact(a);
    REQUIRE(static_cast<int>(cp.size()) == n + 1);
    // det(tI - M) at t=0 is (-1)^n det M
    Rational d = det_exact(a);
    CHECK(cp[0] == ((n % 2 == 0) ? d : -d));
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += a.at(i, i);
    CHECK(cp[n - 1] == -tr);
  }
}

TEST_CASE("jacobi eigensolver on a reference 4x4 Gram matrix") {
  // [[2,0,-1,0],[0,3,0,0],[-1,0,2,0],[0,0,0,3]]: char poly (t-3)^2 (t^2-4t+3),
  // eigenvalues (1,3,3,3)
  SymMat G(4);
  G.at(0, 0) = 2;
  G.at(1, 1) = 3;
  G.at(2, 2) = 2;
  G.at(3, 3) = 3;
  G.at(0, 2) = -1;
  auto e = eigen_sym(G, 1e-13);
  REQUIRE(e.values.size() == 4);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(e.values[2] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(e.values[3] == doctest::Approx(3.0).epsilon(1e-10));
  for (double v : e.values) CHECK(v >= 0.0);
}

TEST_CASE("jacobi eigensolver trivia and reconstruction") {
  SymMat d(3);
  d.at(0, 0) = 3;
  d.at(1, 1) = 1;
  d.at(2, 2) = 2;
  auto e = eigen_sym(d, 1e-14);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(3.0));

  // rank-1 vv^T
  std::vector<double> v = {1.0, -2.0, 0.5, 3.0};
  SymMat r1(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) r1.at(i, j) = v[i] * v[j];
  double n2 = 0;
  for (double t : v) n2 += t * t;
  auto er = eigen_sym(r1, 1e-14);
  CHECK(er.values[3] == doctest::Approx(n2).epsilon(1e-12));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(er.values[i]) < 1e-12 * n2);

  // reconstruction and orthogonality on random symmetric matrices
  Rng rng(77);
  for (int rep = 0; rep < 5; ++rep) {
    int n = 5 + static_cast<int>(rng.next_u64() % 6);
    SymMat M(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) M.at(i, j) = rng.normal();
    double tol = 1e-12;
    auto em = eigen_sym(M, tol);
    DMat V = em.vectors;
    DMat VD = V;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) VD.at(i, j) = V.at(i, j) * em.values[j];
    DMat rec = VD * transposed(V);
    double err = 0, nrmM = M.frob();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) err += std::pow(rec.at(i, j) - M.at(i, j), 2);
    CHECK(std::sqrt(err) <= 10 * tol * std::max(nrmM, 1.0));
    DMat VtV = transposed(V) * V;
    double orterr = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) orterr += std::pow(VtV.at(i, j) - (i == j ? 1.0 : 0.0), 2);
    CHECK(std::sqrt(orterr) <= 10 * tol * n);
  }
}

TEST_CASE("float char poly on symmetric input") {
  SymMat G(2);
  G.at(0, 0) = 2;
  G.at(1, 1) = 2;
  G.at(0, 1) = -1;
  auto cp = char_poly(G);  // t^2 - 4t + 3
  CHECK(cp[2] == doctest::Approx(1.0));
  CHECK(cp[1] == doctest::Approx(-4.0));
  CHECK(cp[0] == doctest::Approx(3.0));
}

TEST_CASE("dense extended-precision determinant") {
  // Hilbert-like 3x3 at 256 bits vs exact
  QMat H(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) H.at(i, j) = make_rational(1, i + j + 1);
  Rational exact = det_exact(H);
  std::vector<std::vector<BigFloat>> hf(3, std::vector<BigFloat>(3, BigFloat(0.0, 256)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) hf[i][j] = BigFloat(H.at(i, j), 256);
  BigFloat d = det_dense(hf);
  CHECK(std::abs(d.to_double() - exact.get_d()) < 1e-18);
}
