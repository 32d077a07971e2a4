#include "powercone/boundary.hpp"

#include <cmath>

#include "powercone/dualcone.hpp"
#include "powercone/rng.hpp"

namespace powercone {

namespace {

template <typename R>
std::vector<BinaryForm<R>> differential_rows(const BinaryForm<R>& q1, const BinaryForm<R>& q2,
                                             const BinaryForm<R>& q3) {
  std::vector<BinaryForm<R>> rows;
  for (const auto* q : {&q1, &q2, &q3}) {
    auto q3f = (*q) * (*q) * (*q);
    for (int m = 0; m <= 2; ++m) rows.push_back(q3f * binary_monomial<R>(2, m));
  }
  return rows;
}

}  // namespace

int jacobian_image_dim(const Triple<Rational>& t) {
  auto rows = differential_rows(t.q1, t.q2, t.q3);
  QMat M(static_cast<int>(rows.size()), 9);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j <= 8; ++j) M.at(static_cast<int>(r), j) = rows[r][j];
  return rank_exact(M);
}

BoundaryClass on_boundary_hypersurface(const Triple<Rational>& t) {
  QMat coeff(3, 3);
  for (int j = 0; j < 3; ++j) {
    coeff.at(0, j) = t.q1[j];
    coeff.at(1, j) = t.q2[j];
    coeff.at(2, j) = t.q3[j];
  }
  if (det_exact(coeff) == 0) return BoundaryClass::DependentTriple;
  return jacobian_image_dim(t) < 9 ? BoundaryClass::OnG : BoundaryClass::OffG;
}

std::vector<double> differential_singular_values(const Triple<double>& t) {
  auto rows = differential_rows(t.q1, t.q2, t.q3);
  DMat M(9, 9);
  for (int r = 0; r < 9; ++r)
    for (int j = 0; j <= 8; ++j) M.at(r, j) = rows[r][j];
  return singular_values(M);
}

BoundaryClass on_boundary_hypersurface(const Triple<double>& t, double tol) {
  DMat coeff(3, 3);
  for (int j = 0; j < 3; ++j) {
    coeff.at(0, j) = t.q1[j];
    coeff.at(1, j) = t.q2[j];
    coeff.at(2, j) = t.q3[j];
  }
  auto sv3 = singular_values(coeff);
  if (sv3[2] <= tol * std::max(sv3[0], 1e-300)) return BoundaryClass::DependentTriple;
  auto sv = differential_singular_values(t);
  return (sv[8] <= tol * std::max(sv[0], 1e-300)) ? BoundaryClass::OnG : BoundaryClass::OffG;
}

int dependent_triple_tangent_dim(const BinaryForm<Rational>& p1, const BinaryForm<Rational>& p2,
                                 const Rational& l1, const Rational& l2) {
  auto h = l1 * p1 + l2 * p2;
  auto h3 = h * h * h;
  auto p1c = p1 * p1 * p1;
  auto p2c = p2 * p2 * p2;
  std::vector<BinaryForm<Rational>> rows;
  for (int m = 0; m <= 2; ++m) rows.push_back((p1c + l1 * h3) * binary_monomial<Rational>(2, m));
  for (int m = 0; m <= 2; ++m) rows.push_back((p2c + l2 * h3) * binary_monomial<Rational>(2, m));
  rows.push_back(h3 * p1);
  rows.push_back(h3 * p2);
  QMat M(static_cast<int>(rows.size()), 9);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int j = 0; j <= 8; ++j) M.at(static_cast<int>(r), j) = rows[r][j];
  return rank_exact(M);
}

// ---------------------------------------------------------------------------
// Four-zero system assembly, generic over Rational / BigFloat.
// ---------------------------------------------------------------------------
namespace {

bool scalar_is_zero(const Rational& v) { return v == 0; }
bool scalar_is_zero(const BigFloat& v) { return v.is_zero(); }

template <typename R>
TernaryForm<R> line_through(const std::array<R, 3>& xi, const std::array<R, 3>& xj) {
  TernaryForm<R> l(1);
  R ca = xi[1] * xj[2] - xi[2] * xj[1];
  R cb = xi[2] * xj[0] - xi[0] * xj[2];
  R cc = xi[0] * xj[1] - xi[1] * xj[0];
  if (!scalar_is_zero(ca)) l.terms[{1, 0, 0}] = ca;
  if (!scalar_is_zero(cb)) l.terms[{0, 1, 0}] = cb;
  if (!scalar_is_zero(cc)) l.terms[{0, 0, 1}] = cc;
  return l;
}

BigFloat det15_of(const std::vector<std::vector<BigFloat>>& m) { return det_dense(m); }

Rational det14_of(const QMat& M) { return det_exact(M); }

}  // namespace

FourZeroSystem<Rational> four_zero_system(const std::array<std::array<Rational, 3>, 3>& pts) {
  FourZeroSystem<Rational> out;
  out.points = pts;
  // collinearity / coincidence checks (exact)
  {
    QMat P(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) P.at(i, j) = pts[i][j];
    if (det_exact(P) == 0) throw std::invalid_argument("four_zero_system: collinear or coincident points");
  }
  out.l12 = line_through(pts[0], pts[1]);
  out.l13 = line_through(pts[0], pts[2]);
  out.l23 = line_through(pts[1], pts[2]);
  out.q1 = out.l12 * out.l13;
  out.q2 = out.l12 * out.l23;
  out.q3 = out.l23 * out.l13;

  auto monos = ternary_monomials(4);
  QMat C(15, 15);
  const auto& U = u_basis();
  for (int col = 0; col < 9; ++col)
    for (int row = 0; row < 15; ++row) C.at(row, col) = U[col].coeff(monos[row]);
  std::vector<TernaryForm<Rational>> prods = {out.q1 * out.q1, out.q1 * out.q2, out.q1 * out.q3,
                                              out.q2 * out.q2, out.q2 * out.q3, out.q3 * out.q3};
  for (int col = 0; col < 6; ++col)
    for (int row = 0; row < 15; ++row) C.at(row, 9 + col) = prods[col].coeff(monos[row]);

  out.det15 = det_exact(C);
  // column-norm product for relative scale
  {
    Rational had(1);
    // rational hadamard scale: use sum of |entries| per column
    for (int col = 0; col < 15; ++col) {
      Rational s(0);
      for (int row = 0; row < 15; ++row) s += abs(C.at(row, col));
      if (s == 0) s = 1;
      had *= s;
    }
    out.hadamard = had;
  }

  // adjugate column 2: adj(C)[i][2] = (-1)^(i+2) * minor(C, row 2 deleted, col i deleted)
  std::array<Rational, 15> v;
  for (int i = 0; i < 15; ++i) {
    QMat M(14, 14);
    int rr = 0;
    for (int r = 0; r < 15; ++r) {
      if (r == 2) continue;
      int cc = 0;
      for (int c = 0; c < 15; ++c) {
        if (c == i) continue;
        M.at(rr, cc) = C.at(r, c);
        ++cc;
      }
      ++rr;
    }
    Rational minor = det14_of(M);
    v[i] = ((i + 2) % 2 == 0) ? minor : -minor;
  }
  out.gram_family = {{{v[9], v[10] / 2, v[11] / 2},
                      {v[10] / 2, v[12], v[13] / 2},
                      {v[11] / 2, v[13] / 2, v[14]}}};
  const auto& G = out.gram_family;
  out.charpoly_t2 = -(G[0][0] + G[1][1] + G[2][2]);
  out.charpoly_t1 = G[0][0] * G[1][1] - G[0][1] * G[1][0] + G[0][0] * G[2][2] - G[0][2] * G[2][0] +
                    G[1][1] * G[2][2] - G[1][2] * G[2][1];
  return out;
}

FourZeroSystem<BigFloat> four_zero_system(const std::array<std::array<BigFloat, 3>, 3>& pts) {
  int prec = pts[0][0].prec();
  BigFloat zero(0.0, prec), one(1.0, prec);
  FourZeroSystem<BigFloat> out;
  out.points = pts;
  {
    std::vector<std::vector<BigFloat>> P(3, std::vector<BigFloat>(3, zero));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) P[i][j] = pts[i][j];
    BigFloat d = det_dense(P);
    if (d.is_zero()) throw std::invalid_argument("four_zero_system: collinear or coincident points");
  }
  out.l12 = line_through(pts[0], pts[1]);
  out.l13 = line_through(pts[0], pts[2]);
  out.l23 = line_through(pts[1], pts[2]);
  out.q1 = out.l12 * out.l13;
  out.q2 = out.l12 * out.l23;
  out.q3 = out.l23 * out.l13;

  auto monos = ternary_monomials(4);
  std::vector<std::vector<BigFloat>> C(15, std::vector<BigFloat>(15, zero));
  const auto& U = u_basis();
  for (int col = 0; col < 9; ++col)
    for (int row = 0; row < 15; ++row) C[row][col] = BigFloat(U[col].coeff(monos[row]), prec);
  std::vector<TernaryForm<BigFloat>> prods = {out.q1 * out.q1, out.q1 * out.q2, out.q1 * out.q3,
                                              out.q2 * out.q2, out.q2 * out.q3, out.q3 * out.q3};
  for (int col = 0; col < 6; ++col)
    for (int row = 0; row < 15; ++row) {
      auto it = prods[col].terms.find(monos[row]);
      if (it != prods[col].terms.end()) C[row][9 + col] = it->second;
    }

  out.det15 = det15_of(C);
  {
    BigFloat had = one;
    for (int col = 0; col < 15; ++col) {
      BigFloat s = zero;
      for (int row = 0; row < 15; ++row) s += abs(C[row][col]);
      if (s.is_zero()) s = one;
      had *= s;
    }
    out.hadamard = had;
  }

  std::array<BigFloat, 15> v{};
  for (auto& x : v) x = zero;
  for (int i = 0; i < 15; ++i) {
    std::vector<std::vector<BigFloat>> M(14, std::vector<BigFloat>(14, zero));
    int rr = 0;
    for (int r = 0; r < 15; ++r) {
      if (r == 2) continue;
      int cc = 0;
      for (int c = 0; c < 15; ++c) {
        if (c == i) continue;
        M[rr][cc] = C[r][c];
        ++cc;
      }
      ++rr;
    }
    BigFloat minor = det_dense(M);
    v[i] = ((i + 2) % 2 == 0) ? minor : -minor;
  }
  BigFloat two(2.0, prec);
  out.gram_family = {{{v[9], v[10] / two, v[11] / two},
                      {v[10] / two, v[12], v[13] / two},
                      {v[11] / two, v[13] / two, v[14]}}};
  const auto& G = out.gram_family;
  out.charpoly_t2 = -(G[0][0] + G[1][1] + G[2][2]);
  out.charpoly_t1 = G[0][0] * G[1][1] - G[0][1] * G[1][0] + G[0][0] * G[2][2] - G[0][2] * G[2][0] +
                    G[1][1] * G[2][2] - G[1][2] * G[2][1];
  return out;
}

// ---------------------------------------------------------------------------
// OnG sampling by determinant sign change.
// ---------------------------------------------------------------------------
namespace {

double det9(const Triple<double>& t) {
  auto rows = differential_rows(t.q1, t.q2, t.q3);
  DMat M(9, 9);
  for (int r = 0; r < 9; ++r)
    for (int j = 0; j <= 8; ++j) M.at(r, j) = rows[r][j];
  // LU determinant
  double det = 1;
  for (int k = 0; k < 9; ++k) {
    int piv = k;
    double best = std::abs(M.at(k, k));
    for (int i = k + 1; i < 9; ++i)
      if (std::abs(M.at(i, k)) > best) {
        best = std::abs(M.at(i, k));
        piv = i;
      }
    if (best == 0) return 0;
    if (piv != k) {
      for (int j = 0; j < 9; ++j) std::swap(M.at(piv, j), M.at(k, j));
      det = -det;
    }
    det *= M.at(k, k);
    for (int i = k + 1; i < 9; ++i) {
      double f = M.at(i, k) / M.at(k, k);
      for (int j = k; j < 9; ++j) M.at(i, j) -= f * M.at(k, j);
    }
  }
  return det;
}

Triple<double> lerp(const Triple<double>& a, const Triple<double>& b, double s) {
  Triple<double> t;
  for (int c = 0; c < 3; ++c) {
    t.q1[c] = (1 - s) * a.q1[c] + s * b.q1[c];
    t.q2[c] = (1 - s) * a.q2[c] + s * b.q2[c];
    t.q3[c] = (1 - s) * a.q3[c] + s * b.q3[c];
  }
  return t;
}

}  // namespace

std::optional<Triple<double>> sample_on_g(uint64_t seed, int bisection_steps) {
  Rng rng(hash_seed(seed, 0x90));
  for (int attempt = 0; attempt < 40; ++attempt) {
    Triple<double> a;
    for (auto* q : {&a.q1, &a.q2, &a.q3})
      for (int c = 0; c < 3; ++c) (*q)[c] = rng.normal();
    // dependent-adjacent endpoint: third quadratic close to the span of the
    // first two
    Triple<double> b = a;
    double mu1 = rng.normal(), mu2 = rng.normal();
    for (int c = 0; c < 3; ++c) b.q3[c] = mu1 * b.q1[c] + mu2 * b.q2[c] + 0.05 * rng.normal();
    double fa = det9(a);
    double fb = det9(b);
    if (fa == 0 || fb == 0 || (fa > 0) == (fb > 0)) continue;
    double lo = 0, hi = 1;
    for (int it = 0; it < bisection_steps; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = det9(lerp(a, b, mid));
      if (fm == 0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0) == (fa > 0))
        lo = mid;
      else
        hi = mid;
    }
    Triple<double> g = lerp(a, b, 0.5 * (lo + hi));
    // reject crossings of the dependent-triple factor
    if (on_boundary_hypersurface(g, 1e-7) == BoundaryClass::OnG) return g;
  }
  return std::nullopt;
}

}  // namespace powercone
